//! The twisted Heisenberg-Virasoro algebra: basis symbols, sparse elements
//! and the exact bracket.
//!
//! The algebra has basis {L_n, I_n, C_L, C_LI, C_I | n ∈ ℤ} with
//!
//! ```text
//! [L_n, L_m] = (n-m) L_{n+m} + δ_{n,-m} (n³-n)/12 C_L
//! [L_n, I_m] = -m I_{n+m}    + δ_{n,-m} (n²+n)   C_LI
//! [I_n, I_m] = n δ_{n,-m} C_I
//! [ · , C_L] = [ · , C_LI] = [ · , C_I] = 0
//! ```
//!
//! These structure constants are the single source of truth in this crate;
//! every convention reconciliation happens in the module-action layer, never
//! here. Elements are immutable values and every operation returns a fresh
//! canonical element (no stored zero coefficients).

use std::collections::BTreeMap;
use std::fmt;

use crate::report::{mag_ordered, CheckReport, Counterexample, Point, PointVal};
use crate::scalar::Scalar;

/// A basis symbol. The derived ordering (L-terms by ascending index, then
/// I-terms, then the three central generators) is the canonical term order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Generator {
    L(i64),
    I(i64),
    CL,
    CLI,
    CI,
}

impl Generator {
    pub fn is_central(self) -> bool {
        matches!(self, Generator::CL | Generator::CLI | Generator::CI)
    }

    /// deg L_n = deg I_n = n; central generators have degree 0.
    pub fn degree(self) -> i64 {
        match self {
            Generator::L(n) | Generator::I(n) => n,
            _ => 0,
        }
    }

    /// Rank used by the deterministic counterexample order: kind-major
    /// (L before I before centrals), indices by magnitude.
    pub(crate) fn order_key(self) -> (u8, (u64, u8)) {
        match self {
            Generator::L(n) => (0, mag_ordered(n)),
            Generator::I(n) => (1, mag_ordered(n)),
            Generator::CL => (2, (0, 0)),
            Generator::CLI => (3, (0, 0)),
            Generator::CI => (4, (0, 0)),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::L(n) => write!(f, "L{n}"),
            Generator::I(n) => write!(f, "I{n}"),
            Generator::CL => write!(f, "CL"),
            Generator::CLI => write!(f, "CLI"),
            Generator::CI => write!(f, "CI"),
        }
    }
}

/// Finite sparse linear combination of basis symbols with `Scalar`
/// coefficients. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct AlgElement {
    terms: BTreeMap<Generator, Scalar>,
}

impl AlgElement {
    pub fn zero() -> Self {
        AlgElement::default()
    }

    pub fn generator(g: Generator) -> Self {
        AlgElement::term(g, Scalar::one())
    }

    pub fn term(g: Generator, coeff: Scalar) -> Self {
        let mut e = AlgElement::zero();
        e.insert(g, coeff);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, g: Generator) -> Scalar {
        self.terms.get(&g).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Generator, &Scalar)> {
        self.terms.iter().map(|(g, c)| (*g, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert(&mut self, g: Generator, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.remove(&g) {
            Some(old) => {
                let sum = old.add(&coeff);
                if !sum.is_zero() {
                    self.terms.insert(g, sum);
                }
            }
            None => {
                self.terms.insert(g, coeff);
            }
        }
    }

    pub fn add(&self, rhs: &AlgElement) -> AlgElement {
        let mut out = self.clone();
        for (g, c) in rhs.iter() {
            out.insert(g, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &AlgElement) -> AlgElement {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> AlgElement {
        self.scale(&Scalar::from_int(-1))
    }

    pub fn scale(&self, s: &Scalar) -> AlgElement {
        if s.is_zero() {
            return AlgElement::zero();
        }
        let mut out = AlgElement::zero();
        for (g, c) in self.iter() {
            out.insert(g, s.mul(c));
        }
        out
    }

    /// Split into homogeneous parts keyed by degree (centrals count as 0).
    pub fn degree_decompose(&self) -> BTreeMap<i64, AlgElement> {
        let mut out: BTreeMap<i64, AlgElement> = BTreeMap::new();
        for (g, c) in self.iter() {
            out.entry(g.degree())
                .or_insert_with(AlgElement::zero)
                .insert(g, c.clone());
        }
        out
    }

    /// True when every term has the given degree.
    pub fn is_homogeneous_of_degree(&self, deg: i64) -> bool {
        self.iter().all(|(g, _)| g.degree() == deg)
    }
}

impl fmt::Display for AlgElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_linear(f, self.iter().map(|(g, c)| (g.to_string(), c)))
    }
}

/// Canonical rendering of a sparse linear combination, shared by algebra
/// elements and module vectors: `6*L0 + 2*CL`, `-v0 + 7/2*v5`, zero is `0`.
/// Real and pure-imaginary coefficients pull their sign into the separator;
/// mixed complex coefficients print as one signed literal (`3-2i*L0`).
pub(crate) fn fmt_linear<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (String, &'a Scalar)>,
) -> fmt::Result {
    let mut first = true;
    let mut wrote = false;
    for (atom, coeff) in terms {
        if coeff.is_zero() {
            continue;
        }
        let mixed = {
            use num_traits::Zero;
            !coeff.re().is_zero() && !coeff.im().is_zero()
        };
        if mixed {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "{coeff}*{atom}")?;
        } else {
            use num_traits::Signed;
            let negative = coeff.re().is_negative() || coeff.im().is_negative();
            let mag = if negative { coeff.neg() } else { coeff.clone() };
            match (first, negative) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            if mag.is_one() {
                write!(f, "{atom}")?;
            } else {
                write!(f, "{mag}*{atom}")?;
            }
        }
        first = false;
        wrote = true;
    }
    if !wrote {
        write!(f, "0")?;
    }
    Ok(())
}

/// The bracket on basis symbols.
pub fn bracket_basis(g: Generator, h: Generator) -> AlgElement {
    use Generator::*;
    match (g, h) {
        (L(n), L(m)) => {
            let mut out = AlgElement::term(L(n + m), Scalar::from_int(n - m));
            if n == -m {
                out = out.add(&AlgElement::term(CL, Scalar::from_ratio(n * n * n - n, 12)));
            }
            out
        }
        (L(n), I(m)) => {
            let mut out = AlgElement::term(I(n + m), Scalar::from_int(-m));
            if n == -m {
                out = out.add(&AlgElement::term(CLI, Scalar::from_int(n * n + n)));
            }
            out
        }
        (I(n), L(m)) => bracket_basis(L(m), I(n)).neg(),
        (I(n), I(m)) => {
            if n == -m {
                AlgElement::term(CI, Scalar::from_int(n))
            } else {
                AlgElement::zero()
            }
        }
        _ => AlgElement::zero(),
    }
}

/// Bilinear extension of [`bracket_basis`].
pub fn bracket(x: &AlgElement, y: &AlgElement) -> AlgElement {
    let mut out = AlgElement::zero();
    for (g, cg) in x.iter() {
        for (h, ch) in y.iter() {
            let term = bracket_basis(g, h).scale(&cg.mul(ch));
            out = out.add(&term);
        }
    }
    out
}

/// Antisymmetry suite over indexed generator pairs: `[g,h] = -[h,g]`.
pub fn check_antisymmetry(window: i64, max_counterexamples: usize) -> CheckReport {
    let gens = crate::report::indexed_generators(window);
    let points: Vec<(Generator, Generator)> = gens
        .iter()
        .flat_map(|&g| gens.iter().map(move |&h| (g, h)))
        .collect();
    crate::report::run_grid(
        "antisym",
        [("g", window), ("h", window)].into(),
        BTreeMap::new(),
        &points,
        max_counterexamples,
        |&(g, h)| {
            let lhs = bracket_basis(g, h);
            let rhs = bracket_basis(h, g).neg();
            if lhs == rhs {
                None
            } else {
                Some(Counterexample {
                    point: Point::from([("g", PointVal::Gen(g)), ("h", PointVal::Gen(h))]),
                    lhs: lhs.to_string(),
                    rhs: rhs.to_string(),
                })
            }
        },
    )
}

/// Jacobi suite over indexed generator triples:
/// `[x,[y,z]] + [y,[z,x]] + [z,[x,y]] = 0`.
pub fn check_jacobi(window: i64, max_counterexamples: usize) -> CheckReport {
    let gens = crate::report::indexed_generators(window);
    let mut points = Vec::with_capacity(gens.len().pow(3));
    for &x in &gens {
        for &y in &gens {
            for &z in &gens {
                points.push((x, y, z));
            }
        }
    }
    crate::report::run_grid(
        "jacobi",
        [("x", window), ("y", window), ("z", window)].into(),
        BTreeMap::new(),
        &points,
        max_counterexamples,
        |&(x, y, z)| {
            let xe = AlgElement::generator(x);
            let ye = AlgElement::generator(y);
            let ze = AlgElement::generator(z);
            let sum = bracket(&xe, &bracket_basis(y, z))
                .add(&bracket(&ye, &bracket_basis(z, x)))
                .add(&bracket(&ze, &bracket_basis(x, y)));
            if sum.is_zero() {
                None
            } else {
                Some(Counterexample {
                    point: Point::from([
                        ("x", PointVal::Gen(x)),
                        ("y", PointVal::Gen(y)),
                        ("z", PointVal::Gen(z)),
                    ]),
                    lhs: sum.to_string(),
                    rhs: "0".to_string(),
                })
            }
        },
    )
}
