//! Expression parser and evaluator for algebra elements and module vectors.
//!
//! Grammar (whitespace between tokens is free, none inside a token):
//!
//! ```text
//! expr   := term { ("+" | "-") term }
//! term   := { "+" | "-" } payload
//! payload:= scalar [ "*" atom ] | atom
//! atom   := GEN | VEC | "[" expr "," expr "]" | "(" expr ")"
//! GEN    := "L"int | "I"int | "CL" | "CLI" | "CI"      (int may be negative)
//! VEC    := "v"int
//! ```
//!
//! Scalar literals follow the scalar grammar and are munched greedily, so
//! `3+2i*L0` is the single coefficient `3+2i` on `L0` while `3+2*L0` is a
//! sum (a sort error: scalars and algebra atoms do not mix). A sign directly
//! attached to a literal binds to its first component (`-1/2+2/3i`); a
//! freestanding sign negates the whole term. Expressions are homogeneous in
//! sort — algebra atoms and module atoms never mix, bracket atoms are
//! algebra-only, and the scalar zero is welcome in any sort.

use std::fmt;

use hvhom_core::{bracket, AlgElement, Generator, ModuleVec, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub expected: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parse error at byte {}: expected {}",
            self.pos, self.expected
        )
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SortError(pub String);

impl fmt::Display for SortError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sort error: {}", self.0)
    }
}

impl std::error::Error for SortError {}

/// Parse tree for an element expression.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Scalar(Scalar),
    Gen(Generator),
    Vec(i64),
    Bracket(Box<Expr>, Box<Expr>),
    Scale(Scalar, Box<Expr>),
    Neg(Box<Expr>),
    Sum(Box<Expr>, Box<Expr>),
}

/// Evaluation result: a scalar, an algebra element, or a module vector.
/// The scalar zero unifies with either element sort.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Scalar(Scalar),
    Algebra(AlgElement),
    Module(ModuleVec),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar(s) => write!(f, "{s}"),
            Value::Algebra(e) => write!(f, "{e}"),
            Value::Module(v) => write!(f, "{v}"),
        }
    }
}

struct Parser<'a> {
    input: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.input[self.pos..]
    }

    fn peek(&self) -> Option<u8> {
        self.input.as_bytes().get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn error(&self, expected: &str) -> ParseError {
        ParseError {
            pos: self.pos,
            expected: expected.to_string(),
        }
    }

    fn parse_expr(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.parse_term()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let rhs = self.parse_term()?;
                    acc = Expr::Sum(Box::new(acc), Box::new(rhs));
                }
                Some(b'-') => {
                    self.pos += 1;
                    let rhs = self.parse_term()?;
                    acc = Expr::Sum(Box::new(acc), Box::new(Expr::Neg(Box::new(rhs))));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_term(&mut self) -> Result<Expr, ParseError> {
        self.skip_ws();
        // A signed scalar literal takes precedence over a freestanding sign.
        if let Some((scalar, consumed)) = Scalar::scan(self.rest(), true) {
            self.pos += consumed;
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
                let atom = self.parse_atom()?;
                return Ok(Expr::Scale(scalar, Box::new(atom)));
            }
            return Ok(Expr::Scalar(scalar));
        }
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                let inner = self.parse_term()?;
                Ok(Expr::Neg(Box::new(inner)))
            }
            Some(b'+') => {
                self.pos += 1;
                self.parse_term()
            }
            _ => self.parse_atom(),
        }
    }

    fn parse_atom(&mut self) -> Result<Expr, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(b'[') => {
                self.pos += 1;
                let lhs = self.parse_expr()?;
                self.skip_ws();
                if self.peek() != Some(b',') {
                    return Err(self.error("','"));
                }
                self.pos += 1;
                let rhs = self.parse_expr()?;
                self.skip_ws();
                if self.peek() != Some(b']') {
                    return Err(self.error("']'"));
                }
                self.pos += 1;
                Ok(Expr::Bracket(Box::new(lhs), Box::new(rhs)))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.parse_expr()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(self.error("')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'L') => {
                self.pos += 1;
                let n = self.parse_index()?;
                Ok(Expr::Gen(Generator::L(n)))
            }
            Some(b'I') => {
                self.pos += 1;
                let n = self.parse_index()?;
                Ok(Expr::Gen(Generator::I(n)))
            }
            Some(b'C') => {
                self.pos += 1;
                match self.peek() {
                    Some(b'L') => {
                        self.pos += 1;
                        if self.peek() == Some(b'I') {
                            self.pos += 1;
                            Ok(Expr::Gen(Generator::CLI))
                        } else {
                            Ok(Expr::Gen(Generator::CL))
                        }
                    }
                    Some(b'I') => {
                        self.pos += 1;
                        Ok(Expr::Gen(Generator::CI))
                    }
                    _ => Err(self.error("'CL', 'CLI' or 'CI'")),
                }
            }
            Some(b'v') => {
                self.pos += 1;
                let t = self.parse_index()?;
                Ok(Expr::Vec(t))
            }
            _ => Err(self.error("a scalar, generator, vector, '[' or '('")),
        }
    }

    /// Signed integer directly attached to a generator or vector token.
    fn parse_index(&mut self) -> Result<i64, ParseError> {
        let start = self.pos;
        if self.peek() == Some(b'-') {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return Err(self.error("an index"));
        }
        self.input[start..self.pos]
            .parse::<i64>()
            .map_err(|_| self.error("an index fitting in 64 bits"))
    }
}

/// Parse a complete element expression.
pub fn parse_expr(input: &str) -> Result<Expr, ParseError> {
    let mut parser = Parser { input, pos: 0 };
    let expr = parser.parse_expr()?;
    parser.skip_ws();
    if parser.pos != input.len() {
        return Err(parser.error("end of input"));
    }
    Ok(expr)
}

fn unify(lhs: Value, rhs: Value) -> Result<(Value, Value), SortError> {
    let promote = |scalar: &Scalar, like: &Value| -> Result<Value, SortError> {
        if scalar.is_zero() {
            Ok(match like {
                Value::Scalar(_) => Value::Scalar(scalar.clone()),
                Value::Algebra(_) => Value::Algebra(AlgElement::zero()),
                Value::Module(_) => Value::Module(ModuleVec::zero()),
            })
        } else {
            Err(SortError(format!(
                "cannot mix the scalar {scalar} with {} terms",
                match like {
                    Value::Scalar(_) => "scalar",
                    Value::Algebra(_) => "algebra",
                    Value::Module(_) => "module",
                }
            )))
        }
    };
    match (&lhs, &rhs) {
        (Value::Scalar(_), Value::Scalar(_))
        | (Value::Algebra(_), Value::Algebra(_))
        | (Value::Module(_), Value::Module(_)) => Ok((lhs, rhs)),
        (Value::Scalar(s), _) => Ok((promote(s, &rhs)?, rhs)),
        (_, Value::Scalar(s)) => {
            let promoted = promote(s, &lhs)?;
            Ok((lhs, promoted))
        }
        _ => Err(SortError("algebra and module terms never mix".to_string())),
    }
}

/// Evaluate a parse tree to a sorted value.
pub fn eval_expr(expr: &Expr) -> Result<Value, SortError> {
    match expr {
        Expr::Scalar(s) => Ok(Value::Scalar(s.clone())),
        Expr::Gen(g) => Ok(Value::Algebra(AlgElement::generator(*g))),
        Expr::Vec(t) => Ok(Value::Module(ModuleVec::basis(*t))),
        Expr::Bracket(lhs, rhs) => {
            let lhs = as_algebra(eval_expr(lhs)?, "bracket arguments")?;
            let rhs = as_algebra(eval_expr(rhs)?, "bracket arguments")?;
            Ok(Value::Algebra(bracket(&lhs, &rhs)))
        }
        Expr::Scale(s, inner) => Ok(match eval_expr(inner)? {
            Value::Scalar(x) => Value::Scalar(s.mul(&x)),
            Value::Algebra(e) => Value::Algebra(e.scale(s)),
            Value::Module(v) => Value::Module(v.scale(s)),
        }),
        Expr::Neg(inner) => Ok(match eval_expr(inner)? {
            Value::Scalar(x) => Value::Scalar(x.neg()),
            Value::Algebra(e) => Value::Algebra(e.neg()),
            Value::Module(v) => Value::Module(v.neg()),
        }),
        Expr::Sum(lhs, rhs) => {
            let (lhs, rhs) = unify(eval_expr(lhs)?, eval_expr(rhs)?)?;
            Ok(match (lhs, rhs) {
                (Value::Scalar(a), Value::Scalar(b)) => Value::Scalar(a.add(&b)),
                (Value::Algebra(a), Value::Algebra(b)) => Value::Algebra(a.add(&b)),
                (Value::Module(a), Value::Module(b)) => Value::Module(a.add(&b)),
                _ => unreachable!("unify returns matching sorts"),
            })
        }
    }
}

fn as_algebra(value: Value, what: &str) -> Result<AlgElement, SortError> {
    match value {
        Value::Algebra(e) => Ok(e),
        Value::Scalar(s) if s.is_zero() => Ok(AlgElement::zero()),
        other => Err(SortError(format!(
            "{what} must be algebra elements, got {other}"
        ))),
    }
}

/// Parse and evaluate, requiring an algebra element.
pub fn eval_algebra(input: &str) -> Result<AlgElement, String> {
    let expr = parse_expr(input).map_err(|e| e.to_string())?;
    match eval_expr(&expr).map_err(|e| e.to_string())? {
        Value::Algebra(e) => Ok(e),
        Value::Scalar(s) if s.is_zero() => Ok(AlgElement::zero()),
        other => Err(format!("expected an algebra element, got {other}")),
    }
}

/// Parse and evaluate, requiring a module vector.
pub fn eval_module(input: &str) -> Result<ModuleVec, String> {
    let expr = parse_expr(input).map_err(|e| e.to_string())?;
    match eval_expr(&expr).map_err(|e| e.to_string())? {
        Value::Module(v) => Ok(v),
        Value::Scalar(s) if s.is_zero() => Ok(ModuleVec::zero()),
        other => Err(format!("expected a module vector, got {other}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval_str(input: &str) -> Result<Value, String> {
        let expr = parse_expr(input).map_err(|e| e.to_string())?;
        eval_expr(&expr).map_err(|e| e.to_string())
    }

    fn algebra(input: &str) -> AlgElement {
        eval_algebra(input).unwrap()
    }

    #[test]
    fn bracket_atoms_evaluate() {
        let e = algebra("[L2, I-2]");
        assert_eq!(e.to_string(), "2*I0 + 6*CLI");
        let e = algebra("[L3, L-3]");
        assert_eq!(e.to_string(), "6*L0 + 2*CL");
        let nested = algebra("[[L1, L2], I0]");
        assert_eq!(
            nested,
            bracket(&algebra("[L1,L2]"), &AlgElement::generator(Generator::I(0)))
        );
    }

    #[test]
    fn three_term_element() {
        let e = algebra("3/2*L2 + I-1 - CL");
        assert_eq!(e.coeff(Generator::L(2)), Scalar::from_ratio(3, 2));
        assert_eq!(e.coeff(Generator::I(-1)), Scalar::one());
        assert_eq!(e.coeff(Generator::CL), Scalar::from_int(-1));
    }

    #[test]
    fn sort_errors() {
        assert!(eval_str("L1 + v0").unwrap_err().contains("never mix"));
        assert!(eval_str("3 + L1").unwrap_err().contains("mix"));
        assert!(eval_str("[v0, v1]").unwrap_err().contains("algebra"));
        // ... while the scalar zero is in every sort
        assert_eq!(eval_str("L1 + 0").unwrap(), eval_str("L1").unwrap());
        assert!(eval_algebra("0").unwrap().is_zero());
        assert!(eval_module("0").unwrap().is_zero());
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = parse_expr("L1 + ").unwrap_err();
        assert_eq!(err.pos, 5);
        let err = parse_expr("[L1, L2").unwrap_err();
        assert_eq!(err.pos, 7);
        let err = parse_expr("Lx").unwrap_err();
        assert_eq!(err.pos, 1);
        let err = parse_expr("L1 L2").unwrap_err();
        assert_eq!(err.pos, 3);
    }

    #[test]
    fn signs_and_greedy_scalars() {
        // literal head sign: (-1/2, +2/3)
        let e = algebra("-1/2+2/3i*L0");
        assert_eq!(
            e.coeff(Generator::L(0)),
            Scalar::parse("-1/2+2/3i").unwrap()
        );
        // freestanding sign negates the term
        let e = algebra("-L1");
        assert_eq!(e.coeff(Generator::L(1)), Scalar::from_int(-1));
        // after a separator the sign composes
        let e = algebra("L1 - -3*I0");
        assert_eq!(e.coeff(Generator::I(0)), Scalar::from_int(3));
        // generator indices bind tighter than subtraction
        let e = algebra("L-3");
        assert_eq!(e.coeff(Generator::L(-3)), Scalar::one());
        let err = eval_str("L1-3").unwrap_err();
        assert!(err.contains("mix"));
    }

    #[test]
    fn module_vectors() {
        let v = eval_module("7/2*v5 - v0").unwrap();
        assert_eq!(v.coeff(5), Scalar::from_ratio(7, 2));
        assert_eq!(v.coeff(0), Scalar::from_int(-1));
        assert_eq!(v.to_string(), "-v0 + 7/2*v5");
    }

    #[test]
    fn parenthesized_scaling() {
        let e = algebra("2*(L1 + I1)");
        assert_eq!(e.coeff(Generator::L(1)), Scalar::from_int(2));
        assert_eq!(e.coeff(Generator::I(1)), Scalar::from_int(2));
    }

    #[test]
    fn canonical_text_round_trips() {
        for text in [
            "6*L0 + 2*CL",
            "-L1 - 3/2*I2",
            "-1/2+2/3i*L0 + CL",
            "i*I3",
            "0",
            "2*I0 + 6*CLI",
        ] {
            let value = eval_str(text).unwrap();
            assert_eq!(value.to_string(), text, "round trip of {text:?}");
        }
    }
}
