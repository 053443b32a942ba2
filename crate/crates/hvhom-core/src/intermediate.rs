//! The seven indecomposable weight-module families of intermediate series
//! (weight multiplicity ≤ 1, zero central charge), their actions on the
//! basis {v_t | t ∈ ℤ}, the module-axiom checker and a desk-scale orbit
//! probe.
//!
//! Action tables, on basis vectors (C_L, C_LI, C_I act as zero in every
//! family):
//!
//! ```text
//! abf(α,β,F): L_n v_t = (α+t+βn) v_{n+t}          I_n v_t = F v_{n+t}
//! af(α,F):    L_n v_t = (t+n) v_{n+t}  (t≠0)      I_n v_t = 0 (t≠0)
//!             L_n v_0 = n(n+α) v_n                I_n v_0 = nF v_n
//! bf(α,F):    L_n v_t = t v_{n+t}      (t≠-n)     I_n v_t = 0 (t≠-n)
//!             L_n v_{-n} = -n(n+α) v_0            I_n v_{-n} = nF v_0
//! u(F):       L_n v_t = t v_{n+t}                 I_n v_t = 0 (t≠-n)
//!                                                 I_n v_{-n} = nF v_0
//! v(F):       L_n v_t = (t+n) v_{n+t}             I_n v_t = 0 (t≠0)
//!                                                 I_n v_0 = nF v_n
//! ut(F):      L_n v_t = t v_{n+t}      (t≠-n)     I_n v_t = 0 (t≠-n)
//!             L_n v_{-n} = 0                      I_n v_{-n} = nF v_0
//! vt(F):      L_n v_t = t v_{n+t}      (t≠-n)     I_n v_t = 0 (t≠0 or n=t=0)
//!             L_n v_{-n} = 0                      I_n v_0 = F v_n (n≠0)
//! ```
//!
//! These tables satisfy the commutator identity for the *opposite* sign of
//! the algebra's bracket: the commutator of the tabulated actions realizes
//! `(m-n)L_{n+m}`, while the bracket here is `(n-m)L_{n+m}`. Negating the
//! action of every non-central generator represents the bracket as defined,
//! so the default action carries the global sign σ = -1; the tabulated
//! σ = +1 orientation stays available for audits ([`Sign::Printed`]).
//! Special lines (t=0, t=-n) take precedence over the generic formula
//! exactly as tabulated.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::algebra::{bracket_basis, fmt_linear, AlgElement, Generator};
use crate::report::{
    all_generators, mag_range, run_grid, CheckReport, Counterexample, Point, PointVal,
};
use crate::scalar::Scalar;

/// One of the seven families with its scalar parameters. Parameters are not
/// constrained: reducible choices are accepted and can be probed with
/// [`orbit_window_span`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Family {
    Abf {
        alpha: Scalar,
        beta: Scalar,
        f: Scalar,
    },
    Af {
        alpha: Scalar,
        f: Scalar,
    },
    Bf {
        alpha: Scalar,
        f: Scalar,
    },
    U {
        f: Scalar,
    },
    V {
        f: Scalar,
    },
    Ut {
        f: Scalar,
    },
    Vt {
        f: Scalar,
    },
}

impl Family {
    pub fn tag(&self) -> &'static str {
        match self {
            Family::Abf { .. } => "abf",
            Family::Af { .. } => "af",
            Family::Bf { .. } => "bf",
            Family::U { .. } => "u",
            Family::V { .. } => "v",
            Family::Ut { .. } => "ut",
            Family::Vt { .. } => "vt",
        }
    }

    pub fn alpha(&self) -> Option<&Scalar> {
        match self {
            Family::Abf { alpha, .. } | Family::Af { alpha, .. } | Family::Bf { alpha, .. } => {
                Some(alpha)
            }
            _ => None,
        }
    }

    pub fn beta(&self) -> Option<&Scalar> {
        match self {
            Family::Abf { beta, .. } => Some(beta),
            _ => None,
        }
    }

    pub fn f(&self) -> &Scalar {
        match self {
            Family::Abf { f, .. }
            | Family::Af { f, .. }
            | Family::Bf { f, .. }
            | Family::U { f }
            | Family::V { f }
            | Family::Ut { f }
            | Family::Vt { f } => f,
        }
    }

    pub fn params_map(&self) -> BTreeMap<String, String> {
        let mut map = BTreeMap::new();
        map.insert("family".to_string(), self.tag().to_string());
        if let Some(alpha) = self.alpha() {
            map.insert("alpha".to_string(), alpha.to_string());
        }
        if let Some(beta) = self.beta() {
            map.insert("beta".to_string(), beta.to_string());
        }
        map.insert("F".to_string(), self.f().to_string());
        map
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Abf { alpha, beta, f: ff } => write!(f, "abf({alpha}, {beta}, {ff})"),
            Family::Af { alpha, f: ff } => write!(f, "af({alpha}, {ff})"),
            Family::Bf { alpha, f: ff } => write!(f, "bf({alpha}, {ff})"),
            Family::U { f: ff } => write!(f, "u({ff})"),
            Family::V { f: ff } => write!(f, "v({ff})"),
            Family::Ut { f: ff } => write!(f, "ut({ff})"),
            Family::Vt { f: ff } => write!(f, "vt({ff})"),
        }
    }
}

/// Finite sparse combination of the basis vectors v_t.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ModuleVec {
    terms: BTreeMap<i64, Scalar>,
}

impl ModuleVec {
    pub fn zero() -> Self {
        ModuleVec::default()
    }

    pub fn basis(t: i64) -> Self {
        ModuleVec::single(t, Scalar::one())
    }

    pub fn single(t: i64, coeff: Scalar) -> Self {
        let mut v = ModuleVec::zero();
        v.insert(t, coeff);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, t: i64) -> Scalar {
        self.terms.get(&t).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &Scalar)> {
        self.terms.iter().map(|(t, c)| (*t, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert(&mut self, t: i64, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.remove(&t) {
            Some(old) => {
                let sum = old.add(&coeff);
                if !sum.is_zero() {
                    self.terms.insert(t, sum);
                }
            }
            None => {
                self.terms.insert(t, coeff);
            }
        }
    }

    pub fn add(&self, rhs: &ModuleVec) -> ModuleVec {
        let mut out = self.clone();
        for (t, c) in rhs.iter() {
            out.insert(t, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &ModuleVec) -> ModuleVec {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> ModuleVec {
        self.scale(&Scalar::from_int(-1))
    }

    pub fn scale(&self, s: &Scalar) -> ModuleVec {
        if s.is_zero() {
            return ModuleVec::zero();
        }
        let mut out = ModuleVec::zero();
        for (t, c) in self.iter() {
            out.insert(t, s.mul(c));
        }
        out
    }
}

impl fmt::Display for ModuleVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_linear(f, self.iter().map(|(t, c)| (format!("v{t}"), c)))
    }
}

/// Global sign applied to the tabulated action of non-central generators.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Sign {
    /// σ = +1: the action exactly as tabulated (audit orientation).
    Printed,
    /// σ = -1: the orientation under which the module axiom holds against
    /// the bracket as defined. Default everywhere.
    Fixed,
}

impl Sign {
    pub fn scalar(self) -> Scalar {
        match self {
            Sign::Printed => Scalar::one(),
            Sign::Fixed => Scalar::from_int(-1),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Sign::Printed => "+1",
            Sign::Fixed => "-1",
        }
    }
}

/// The tabulated action of a basis symbol on v_t, verbatim, σ = +1.
pub fn act_printed(family: &Family, g: Generator, t: i64) -> ModuleVec {
    use Generator::*;
    let int = Scalar::from_int;
    match family {
        Family::Abf { alpha, beta, f } => match g {
            L(n) => {
                let coeff = alpha.add(&int(t)).add(&beta.mul(&int(n)));
                ModuleVec::single(n + t, coeff)
            }
            I(n) => ModuleVec::single(n + t, f.clone()),
            _ => ModuleVec::zero(),
        },
        Family::Af { alpha, f } => match g {
            L(n) if t == 0 => ModuleVec::single(n, int(n).mul(&int(n).add(alpha))),
            L(n) => ModuleVec::single(n + t, int(t + n)),
            I(n) if t == 0 => ModuleVec::single(n, int(n).mul(f)),
            I(_) => ModuleVec::zero(),
            _ => ModuleVec::zero(),
        },
        Family::Bf { alpha, f } => match g {
            L(n) if t == -n => ModuleVec::single(0, int(-n).mul(&int(n).add(alpha))),
            L(n) => ModuleVec::single(n + t, int(t)),
            I(n) if t == -n => ModuleVec::single(0, int(n).mul(f)),
            I(_) => ModuleVec::zero(),
            _ => ModuleVec::zero(),
        },
        Family::U { f } => match g {
            L(n) => ModuleVec::single(n + t, int(t)),
            I(n) if t == -n => ModuleVec::single(0, int(n).mul(f)),
            I(_) => ModuleVec::zero(),
            _ => ModuleVec::zero(),
        },
        Family::V { f } => match g {
            L(n) => ModuleVec::single(n + t, int(t + n)),
            I(n) if t == 0 => ModuleVec::single(n, int(n).mul(f)),
            I(_) => ModuleVec::zero(),
            _ => ModuleVec::zero(),
        },
        Family::Ut { f } => match g {
            L(n) if t == -n => ModuleVec::zero(),
            L(n) => ModuleVec::single(n + t, int(t)),
            I(n) if t == -n => ModuleVec::single(0, int(n).mul(f)),
            I(_) => ModuleVec::zero(),
            _ => ModuleVec::zero(),
        },
        Family::Vt { f } => match g {
            L(n) if t == -n => ModuleVec::zero(),
            L(n) => ModuleVec::single(n + t, int(t)),
            // zero for t≠0 and for n=t=0; F·v_n when t=0, n≠0
            I(n) if t == 0 && n != 0 => ModuleVec::single(n, f.clone()),
            I(_) => ModuleVec::zero(),
            _ => ModuleVec::zero(),
        },
    }
}

/// Action of a basis symbol with the chosen sign convention.
pub fn act_generator(family: &Family, g: Generator, t: i64, sign: Sign) -> ModuleVec {
    if g.is_central() {
        return ModuleVec::zero();
    }
    match sign {
        Sign::Printed => act_printed(family, g, t),
        Sign::Fixed => act_printed(family, g, t).neg(),
    }
}

/// Action of a basis symbol on a module vector, extended linearly.
pub fn act_generator_vec(family: &Family, g: Generator, v: &ModuleVec, sign: Sign) -> ModuleVec {
    let mut out = ModuleVec::zero();
    for (t, c) in v.iter() {
        out = out.add(&act_generator(family, g, t, sign).scale(c));
    }
    out
}

/// Action of an algebra element on a module vector, bilinear.
pub fn act(family: &Family, x: &AlgElement, v: &ModuleVec, sign: Sign) -> ModuleVec {
    let mut out = ModuleVec::zero();
    for (g, coeff) in x.iter() {
        out = out.add(&act_generator_vec(family, g, v, sign).scale(coeff));
    }
    out
}

/// Module-axiom suite: `ρ([g,h]) v_t = ρ(g)ρ(h) v_t - ρ(h)ρ(g) v_t` with
/// ρ = sign·(tabulated action), over all generator pairs (centrals
/// included) and basis indices in the window.
pub fn check_lie_module(
    family: &Family,
    window: i64,
    sign: Sign,
    max_counterexamples: usize,
) -> CheckReport {
    let gens = all_generators(window);
    let ts = mag_range(window);
    let mut points = Vec::with_capacity(gens.len() * gens.len() * ts.len());
    for &g in &gens {
        for &h in &gens {
            for &t in &ts {
                points.push((g, h, t));
            }
        }
    }
    let mut params = family.params_map();
    params.insert("sign".to_string(), sign.as_str().to_string());
    run_grid(
        "lie-module",
        [("g", window), ("h", window), ("t", window)].into(),
        params,
        &points,
        max_counterexamples,
        |&(g, h, t)| {
            let vt = ModuleVec::basis(t);
            let lhs = act(family, &bracket_basis(g, h), &vt, sign);
            let rhs = act_generator_vec(family, g, &act_generator(family, h, t, sign), sign).sub(
                &act_generator_vec(family, h, &act_generator(family, g, t, sign), sign),
            );
            if lhs == rhs {
                None
            } else {
                Some(Counterexample {
                    point: Point::from([
                        ("g", PointVal::Gen(g)),
                        ("h", PointVal::Gen(h)),
                        ("t", PointVal::Int(t)),
                    ]),
                    lhs: lhs.to_string(),
                    rhs: rhs.to_string(),
                })
            }
        },
    )
}

/// Indices reachable from v_{t0} by repeated application of generators with
/// `|n| ≤ window`, intersected with `[-window, window]`. A reducibility
/// probe: a proper invariant window pattern shows up as an orbit that does
/// not fill the window.
pub fn orbit_window_span(family: &Family, t0: i64, window: i64) -> BTreeSet<i64> {
    let mut reached = BTreeSet::new();
    if t0.abs() > window {
        return reached;
    }
    reached.insert(t0);
    let gens = crate::report::indexed_generators(window);
    let mut frontier = vec![t0];
    while let Some(t) = frontier.pop() {
        for &g in &gens {
            for (target, _) in act_printed(family, g, t).iter() {
                if target.abs() <= window && reached.insert(target) {
                    frontier.push(target);
                }
            }
        }
    }
    reached
}

#[cfg(test)]
mod tests {
    use super::*;
    use Generator::*;

    fn s(t: &str) -> Scalar {
        Scalar::parse(t).unwrap()
    }

    fn abf(alpha: &str, beta: &str, f: &str) -> Family {
        Family::Abf {
            alpha: s(alpha),
            beta: s(beta),
            f: s(f),
        }
    }

    #[test]
    fn tabulated_actions() {
        // abf(1/2, 0, 1): L_2 v_3 = (1/2 + 3) v_5
        let fam = abf("1/2", "0", "1");
        assert_eq!(act_printed(&fam, L(2), 3), ModuleVec::single(5, s("7/2")));
        // af(1, 1): L_3 v_0 = 3·(3+1) v_3
        let fam = Family::Af {
            alpha: s("1"),
            f: s("1"),
        };
        assert_eq!(act_printed(&fam, L(3), 0), ModuleVec::single(3, s("12")));
        // vt: I_0 v_0 = 0, I_2 v_0 = F v_2
        let fam = Family::Vt { f: s("3") };
        assert!(act_printed(&fam, I(0), 0).is_zero());
        assert_eq!(act_printed(&fam, I(2), 0), ModuleVec::single(2, s("3")));
        // centrals act as zero everywhere
        for fam in [abf("1/3", "1/5", "2"), Family::U { f: s("2") }] {
            for g in [CL, CLI, CI] {
                assert!(act_printed(&fam, g, 4).is_zero());
            }
        }
    }

    #[test]
    fn sign_fixed_action_negates_the_table() {
        let fam = abf("1/2", "0", "1");
        assert_eq!(
            act_generator(&fam, L(2), 3, Sign::Fixed),
            ModuleVec::single(5, s("-7/2"))
        );
        assert!(act(&fam, &AlgElement::zero(), &ModuleVec::basis(0), Sign::Fixed).is_zero());
        assert!(act_generator(&fam, CLI, 0, Sign::Fixed).is_zero());
    }

    #[test]
    fn module_axiom_needs_the_sign_fix() {
        let fam = abf("1/3", "1/5", "2");
        assert!(check_lie_module(&fam, 4, Sign::Fixed, 5).passed());

        let report = check_lie_module(&fam, 4, Sign::Printed, 5);
        assert!(!report.passed());
        assert!(!report.counterexamples.is_empty());
    }

    #[test]
    fn all_families_pass_on_a_small_window() {
        let families = [
            abf("1/3", "1/5", "2"),
            Family::Af {
                alpha: s("1/3"),
                f: s("2"),
            },
            Family::Bf {
                alpha: s("1/3"),
                f: s("2"),
            },
            Family::U { f: s("2") },
            Family::V { f: s("2") },
            Family::Ut { f: s("2") },
            Family::Vt { f: s("2") },
        ];
        for fam in &families {
            let report = check_lie_module(fam, 4, Sign::Fixed, 5);
            assert!(
                report.passed(),
                "{} failed: {:?}",
                fam,
                report.counterexamples.first()
            );
        }
    }

    #[test]
    fn degree_shift_is_single_index() {
        let fams = [
            abf("1/3", "1/5", "2"),
            Family::Bf {
                alpha: s("1/3"),
                f: s("2"),
            },
            Family::Vt { f: s("2") },
        ];
        for fam in &fams {
            for n in -3..=3i64 {
                for t in -3..=3i64 {
                    for g in [L(n), I(n)] {
                        let out = act_printed(fam, g, t);
                        assert!(out.len() <= 1);
                        for (target, _) in out.iter() {
                            assert_eq!(target, n + t);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn orbit_probe_distinguishes_reducible_parameters() {
        // α + t = 1/3 + t never vanishes: full window reachable.
        let fam = abf("1/3", "0", "1");
        let orbit = orbit_window_span(&fam, 0, 6);
        assert_eq!(orbit.len(), 13);

        // α = β = F = 0: v_0 is annihilated by every generator.
        let fam = abf("0", "0", "0");
        let orbit = orbit_window_span(&fam, 0, 6);
        assert_eq!(orbit, BTreeSet::from([0]));
        // ... while from t=1 everything (including 0) is reachable.
        let orbit = orbit_window_span(&fam, 1, 6);
        assert_eq!(orbit.len(), 13);
    }

    #[test]
    fn module_vec_text_form() {
        let v = ModuleVec::single(5, s("7/2")).add(&ModuleVec::single(0, s("-1")));
        assert_eq!(v.to_string(), "-v0 + 7/2*v5");
        assert_eq!(ModuleVec::zero().to_string(), "0");
    }
}
