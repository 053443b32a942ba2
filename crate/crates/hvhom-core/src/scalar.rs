//! Exact scalars: Gaussian rationals `p/q + (r/s)i` over arbitrary-precision
//! integers, the ground field for every coefficient in the crate.
//!
//! Both components are kept in lowest terms with positive denominators, so
//! structural equality is field equality and identities can be checked to
//! exact zero. There is no floating-point path anywhere.
//!
//! Text grammar (shared with the CLI): `int`, `int/int`, optionally a signed
//! imaginary tail `±int[/int]i`; pure imaginary literals `i`, `-i`, `2/3i`
//! are accepted. No whitespace inside a literal. A leading sign applies to
//! the first component only, so `-1/2+2/3i` is `(-1/2, +2/3)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// An exact Gaussian rational. The default value is zero.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Scalar {
    re: BigRational,
    im: BigRational,
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Scalar { re, im }
    }

    pub fn zero() -> Self {
        Scalar::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Scalar::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::new(
            BigRational::from_integer(BigInt::from(n)),
            BigRational::zero(),
        )
    }

    /// Real rational `num/den`. Panics if `den == 0`; intended for literals.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// True for elements of ℤ (imaginary part zero, denominator one).
    pub fn is_integer(&self) -> bool {
        self.im.is_zero() && self.re.is_integer()
    }

    /// Integer value if this scalar is a machine-sized integer.
    pub fn to_i64(&self) -> Option<i64> {
        if !self.is_integer() {
            return None;
        }
        use num_traits::ToPrimitive;
        self.re.to_integer().to_i64()
    }

    pub fn conj(&self) -> Self {
        Scalar::new(self.re.clone(), -self.im.clone())
    }

    /// Squared modulus `re² + im²`, a nonnegative rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn neg(&self) -> Self {
        Scalar::new(-self.re.clone(), -self.im.clone())
    }

    pub fn add(&self, rhs: &Scalar) -> Self {
        Scalar::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }

    pub fn sub(&self, rhs: &Scalar) -> Self {
        Scalar::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }

    pub fn mul(&self, rhs: &Scalar) -> Self {
        Scalar::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let n = self.norm_sqr();
        Ok(Scalar::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn div(&self, rhs: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(self.mul(&rhs.inv()?))
    }

    /// Exact integer power; `x⁰ = 1`, negative exponents invert first.
    pub fn pow_int(&self, n: i64) -> Result<Scalar, ScalarError> {
        let (base, mut e) = if n < 0 {
            (self.inv()?, n.unsigned_abs())
        } else {
            (self.clone(), n as u64)
        };
        let mut acc = Scalar::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc)
    }

    /// Scan a scalar literal at the start of `input`. Returns the value and
    /// the number of bytes consumed, or None if no literal starts here.
    /// `signed_head` permits a leading sign (applied to the head component).
    pub fn scan(input: &str, signed_head: bool) -> Option<(Scalar, usize)> {
        let b = input.as_bytes();
        let mut i = 0;
        let mut head_neg = false;
        if signed_head && i < b.len() && (b[i] == b'+' || b[i] == b'-') {
            head_neg = b[i] == b'-';
            i += 1;
        }
        if i < b.len() && b[i] == b'i' {
            let mag = BigRational::one();
            let im = if head_neg { -mag } else { mag };
            return Some((Scalar::new(BigRational::zero(), im), i + 1));
        }
        let (head, after_head) = scan_ratio(b, i)?;
        i = after_head;
        let head = if head_neg { -head } else { head };
        if i < b.len() && b[i] == b'i' {
            return Some((Scalar::new(BigRational::zero(), head), i + 1));
        }
        // Optional imaginary tail: only committed when it ends in 'i'.
        if i < b.len() && (b[i] == b'+' || b[i] == b'-') {
            let tail_neg = b[i] == b'-';
            let mut j = i + 1;
            let tail = if j < b.len() && b[j] == b'i' {
                j += 1;
                Some(BigRational::one())
            } else if let Some((r, after)) = scan_ratio(b, j) {
                if after < b.len() && b[after] == b'i' {
                    j = after + 1;
                    Some(r)
                } else {
                    None
                }
            } else {
                None
            };
            if let Some(t) = tail {
                let im = if tail_neg { -t } else { t };
                return Some((Scalar::new(head, im), j));
            }
        }
        Some((Scalar::new(head, BigRational::zero()), i))
    }

    /// Parse a complete scalar literal.
    pub fn parse(input: &str) -> Result<Scalar, ScalarError> {
        match Scalar::scan(input, true) {
            Some((v, n)) if n == input.len() => Ok(v),
            Some((_, n)) => Err(ScalarError::Parse {
                pos: n,
                msg: "trailing input after scalar".into(),
            }),
            None => Err(ScalarError::Parse {
                pos: 0,
                msg: "expected scalar".into(),
            }),
        }
    }
}

/// Unsigned `digits[/digits]` starting at `i`; a zero denominator rolls the
/// fraction part back so `3/0` scans as `3`.
fn scan_ratio(b: &[u8], i: usize) -> Option<(BigRational, usize)> {
    let (num, j) = scan_digits(b, i)?;
    if j < b.len() && b[j] == b'/' {
        if let Some((den, j2)) = scan_digits(b, j + 1) {
            if !den.is_zero() {
                return Some((BigRational::new(num, den), j2));
            }
        }
        // fall through: keep the integer head only
    }
    Some((BigRational::from_integer(num), j))
}

fn scan_digits(b: &[u8], i: usize) -> Option<(BigInt, usize)> {
    let mut j = i;
    while j < b.len() && b[j].is_ascii_digit() {
        j += 1;
    }
    if j == i {
        return None;
    }
    let s = std::str::from_utf8(&b[i..j]).ok()?;
    Some((BigInt::from_str(s).ok()?, j))
}

fn fmt_ratio(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `1 ↦ "i"`, otherwise `r` followed by `i`.
fn fmt_imag_mag(r: &BigRational) -> String {
    if r.is_one() {
        "i".to_string()
    } else {
        format!("{}i", fmt_ratio(r))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.im.is_zero() {
            return write!(f, "{}", fmt_ratio(&self.re));
        }
        if self.re.is_zero() {
            if self.im.is_negative() {
                return write!(f, "-{}", fmt_imag_mag(&-self.im.clone()));
            }
            return write!(f, "{}", fmt_imag_mag(&self.im));
        }
        let sign = if self.im.is_negative() { "-" } else { "+" };
        write!(
            f,
            "{}{}{}",
            fmt_ratio(&self.re),
            sign,
            fmt_imag_mag(&self.im.abs())
        )
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

impl FromStr for Scalar {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Scalar::parse(s)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $inherent:ident) => {
        impl std::ops::$trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar::$inherent(self, rhs)
            }
        }
        impl std::ops::$trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar::$inherent(&self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, add);
forward_binop!(Sub, sub, sub);
forward_binop!(Mul, mul, mul);

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

impl std::ops::Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(&self)
    }
}
