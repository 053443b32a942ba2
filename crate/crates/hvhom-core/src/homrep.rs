//! Twisted modules over the Hom-type algebra: admissibility constraints,
//! module twist maps, the action ρ_φ = φ_V ∘ ρ, the two compatibility
//! checkers, the exact windowed twist-matrix solver, and the closed-form
//! audit for the seven primed families.
//!
//! A module twist for a family and an endomorphism `(k,a,b,c,d)` exists only
//! under per-family parameter constraints (`admissibility`). When they hold,
//! the twist map is monomial, `φ_V(v_t) = aᵗ·m·v_{kt+q}` with a free nonzero
//! scalar `m` and an integer offset `q` (`q = kα - α - kFd` for the dense
//! family, `q = 0` otherwise), and the compatibility condition
//!
//! ```text
//! ρ(φ_alg(x)) ∘ φ_V = φ_V ∘ ρ(x)                                    (compat)
//! ```
//!
//! holds on every window, as does the twisted commutator identity
//!
//! ```text
//! ρ_φ([x,y]_φ) ∘ φ_V(v) = ρ_φ(φ_alg(x)) ρ_φ(y) v - ρ_φ(φ_alg(y)) ρ_φ(x) v
//! ```
//!
//! The solver drops the closed form and instead solves (compat) exactly for
//! a general twist matrix `a_{t,j}` on a finite index box, imposing only
//! equations whose unknowns all lie inside the box and reporting the
//! solution space restricted to interior rows — an honest truncation of the
//! infinite system.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::algebra::{bracket_basis, AlgElement, Generator};
use crate::endo::{apply_endo, DeltaCorrections, EndoError, EndoParams, Endomorphism};
use crate::intermediate::{act, act_generator, act_printed, Family, ModuleVec, Sign};
use crate::linalg::{Row, RowReducer};
use crate::report::{
    all_generators, indexed_generators, mag_range, run_grid, AuditEntry, AuditReport, CheckReport,
    Counterexample, Point, PointVal,
};
use crate::scalar::Scalar;

/// Window used to calibrate the algebra endomorphism behind a spec;
/// calibration is window-stable for every window ≥ 3.
const CALIBRATION_WINDOW: i64 = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("constraint violated: {name}: expected {expected}, got {actual}")]
pub struct ConstraintViolation {
    pub name: String,
    pub expected: String,
    pub actual: String,
}

impl ConstraintViolation {
    fn new(name: &str, expected: impl fmt::Display, actual: impl fmt::Display) -> Self {
        ConstraintViolation {
            name: name.to_string(),
            expected: expected.to_string(),
            actual: actual.to_string(),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomrepError {
    #[error(transparent)]
    Constraint(#[from] ConstraintViolation),
    #[error("norm must be nonzero (a zero twist degenerates the module)")]
    ZeroNorm,
    #[error("window {window} too small: no interior rows for |k| = {k_abs}")]
    WindowTooSmall { window: i64, k_abs: i64 },
    #[error(transparent)]
    Endo(#[from] EndoError),
}

fn require_eq(name: &str, actual: &Scalar, expected: &Scalar) -> Result<(), ConstraintViolation> {
    if actual == expected {
        Ok(())
    } else {
        Err(ConstraintViolation::new(name, expected, actual))
    }
}

/// `q = kα - α - kFd` as an exact scalar (dense family only).
fn dense_offset(alpha: &Scalar, f: &Scalar, params: &EndoParams) -> Scalar {
    let k = Scalar::from_int(params.k());
    k.mul(alpha).sub(alpha).sub(&k.mul(f).mul(params.d()))
}

fn require_alpha_not_nonzero_integer(alpha: &Scalar) -> Result<(), ConstraintViolation> {
    if alpha.is_integer() && !alpha.is_zero() {
        return Err(ConstraintViolation::new(
            "alpha not in Z\\{0}",
            "a non-integer or zero",
            alpha,
        ));
    }
    Ok(())
}

/// `k·b = 1` (the tabulated `k⁻¹b⁻¹ = 1`).
fn require_kb_one(params: &EndoParams) -> Result<(), ConstraintViolation> {
    let kb = Scalar::from_int(params.k()).mul(params.b());
    require_eq("k*b = 1", &kb, &Scalar::one())
}

/// Validate the family's admissibility constraints against the endomorphism
/// parameters; returns the twist offset q (nonzero only for the dense
/// family). The constraint `1 - k ∓ kFc = 0` pins c only when F ≠ 0; at
/// F = 0 it degenerates to `k = 1` with c unconstrained.
pub fn admissibility(family: &Family, params: &EndoParams) -> Result<i64, ConstraintViolation> {
    let one = Scalar::one();
    let zero = Scalar::zero();
    match family {
        Family::Abf { alpha, f, .. } => {
            require_eq("b = 1", params.b(), &one)?;
            require_eq("c = 0", params.c(), &zero)?;
            let q = dense_offset(alpha, f, params);
            q.to_i64().ok_or_else(|| {
                ConstraintViolation::new("q = k*alpha - alpha - k*F*d in Z", "an integer", &q)
            })
        }
        Family::Af { alpha, f } => {
            require_alpha_not_nonzero_integer(alpha)?;
            require_kb_one(params)?;
            if f.is_zero() {
                if params.k() != 1 {
                    return Err(ConstraintViolation::new(
                        "k = 1 (degenerate F = 0)",
                        "1",
                        params.k(),
                    ));
                }
            } else {
                // 1 - k - kFc = 0
                let k = Scalar::from_int(params.k());
                let lhs = one.sub(&k).sub(&k.mul(f).mul(params.c()));
                require_eq("1 - k - k*F*c = 0", &lhs, &zero)?;
            }
            require_eq("d = 0", params.d(), &zero)?;
            Ok(0)
        }
        Family::Bf { alpha, f } => {
            require_alpha_not_nonzero_integer(alpha)?;
            require_kb_one(params)?;
            if f.is_zero() {
                if params.k() != 1 {
                    return Err(ConstraintViolation::new(
                        "k = 1 (degenerate F = 0)",
                        "1",
                        params.k(),
                    ));
                }
            } else {
                // 1 - k + kFc = 0
                let k = Scalar::from_int(params.k());
                let lhs = one.sub(&k).add(&k.mul(f).mul(params.c()));
                require_eq("1 - k + k*F*c = 0", &lhs, &zero)?;
            }
            require_eq("d = 0", params.d(), &zero)?;
            Ok(0)
        }
        Family::U { .. } | Family::V { .. } | Family::Ut { .. } => {
            require_kb_one(params)?;
            require_eq("c = 0", params.c(), &zero)?;
            require_eq("d = 0", params.d(), &zero)?;
            Ok(0)
        }
        Family::Vt { .. } => {
            require_eq("b = 1", params.b(), &one)?;
            require_eq("c = 0", params.c(), &zero)?;
            require_eq("d = 0", params.d(), &zero)?;
            Ok(0)
        }
    }
}

/// An admissible (family, endomorphism, normalization) triple with its
/// derived data: the calibrated algebra twist and the offset q.
#[derive(Clone, PartialEq, Debug)]
pub struct HomModuleSpec {
    family: Family,
    endo: Endomorphism,
    norm: Scalar,
    q: i64,
}

impl HomModuleSpec {
    /// Validated construction: admissibility, nonzero norm, calibration.
    pub fn new(family: Family, params: EndoParams, norm: Scalar) -> Result<Self, HomrepError> {
        let q = admissibility(&family, &params)?;
        Self::build(family, params, norm, q)
    }

    /// Construction without the admissibility constraints, for negative
    /// controls and audits. The dense family still needs an integral q for
    /// the twist's index map to exist, and the norm must be nonzero.
    pub fn new_unchecked(
        family: Family,
        params: EndoParams,
        norm: Scalar,
    ) -> Result<Self, HomrepError> {
        let q = match &family {
            Family::Abf { alpha, f, .. } => {
                let q = dense_offset(alpha, f, &params);
                q.to_i64().ok_or_else(|| {
                    ConstraintViolation::new("q = k*alpha - alpha - k*F*d in Z", "an integer", &q)
                })?
            }
            _ => 0,
        };
        Self::build(family, params, norm, q)
    }

    fn build(
        family: Family,
        params: EndoParams,
        norm: Scalar,
        q: i64,
    ) -> Result<Self, HomrepError> {
        if norm.is_zero() {
            return Err(HomrepError::ZeroNorm);
        }
        let endo = Endomorphism::calibrated(params, CALIBRATION_WINDOW)?;
        Ok(HomModuleSpec {
            family,
            endo,
            norm,
            q,
        })
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn endo(&self) -> &Endomorphism {
        &self.endo
    }

    pub fn params(&self) -> &EndoParams {
        &self.endo.params
    }

    pub fn norm(&self) -> &Scalar {
        &self.norm
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn params_map(&self) -> BTreeMap<String, String> {
        let mut map = self.family.params_map();
        map.extend(self.params().params_map());
        map.insert("norm".to_string(), self.norm.to_string());
        map.insert("q".to_string(), self.q.to_string());
        map
    }

    /// The module twist on a basis vector: `φ_V(v_t) = aᵗ·m·v_{kt+q}`.
    pub fn twist_vec(&self, t: i64) -> ModuleVec {
        let coeff = self.params().pow_a(t).mul(&self.norm);
        ModuleVec::single(self.params().k() * t + self.q, coeff)
    }

    /// Linear extension of the twist map.
    pub fn twist_apply(&self, v: &ModuleVec) -> ModuleVec {
        let mut out = ModuleVec::zero();
        for (t, c) in v.iter() {
            out = out.add(&self.twist_vec(t).scale(c));
        }
        out
    }

    /// The twisted action `ρ_φ(x) = φ_V ∘ ρ(x)`.
    pub fn hom_act(&self, x: &AlgElement, v: &ModuleVec) -> ModuleVec {
        self.twist_apply(&act(&self.family, x, v, Sign::Fixed))
    }

    fn hom_act_basis(&self, g: Generator, t: i64) -> ModuleVec {
        self.twist_apply(&act_generator(&self.family, g, t, Sign::Fixed))
    }

    /// The tabulated primed closed forms, verbatim and σ = +1, used only by
    /// the audit. `None` where the tabulated text restricts the formula
    /// without stating the excluded entry.
    pub fn hom_act_printed(&self, g: Generator, t: i64) -> Option<ModuleVec> {
        use Generator::*;
        let k = self.params().k();
        let m = &self.norm;
        let int = Scalar::from_int;
        let pow = |e: i64| self.params().pow_a(e);
        let sv = |idx: i64, c: Scalar| Some(ModuleVec::single(idx, c));
        match (&self.family, g) {
            (_, CL) | (_, CLI) | (_, CI) => Some(ModuleVec::zero()),
            (Family::Abf { alpha, beta, .. }, L(n)) => {
                let coeff = alpha.add(&int(t)).add(&beta.mul(&int(n)));
                sv(k * (n + t) + self.q, coeff.mul(&pow(n + t)).mul(m))
            }
            (Family::Abf { f, .. }, I(n)) => sv(k * (n + t) + self.q, f.mul(&pow(n + t)).mul(m)),
            (Family::Af { alpha, .. }, L(n)) => {
                if t == 0 {
                    sv(k * n, int(n).mul(&int(n).add(alpha)).mul(&pow(n)).mul(m))
                } else {
                    // the stray factor k, kept as tabulated
                    sv(k * (n + t), int(t + n).mul(&int(k)).mul(&pow(n + t)).mul(m))
                }
            }
            (Family::Af { f, .. }, I(n)) => {
                if t == 0 {
                    sv(k * n, int(n).mul(f).mul(&pow(n)).mul(m))
                } else {
                    Some(ModuleVec::zero())
                }
            }
            (Family::Bf { alpha, .. }, L(n)) => {
                if t == -n {
                    sv(0, int(-n).mul(&int(n).add(alpha)).mul(&pow(n)).mul(m))
                } else {
                    sv(k * (n + t), int(t).mul(&pow(n + t)).mul(m))
                }
            }
            (Family::Bf { f, .. }, I(n)) => {
                if t == -n {
                    sv(0, int(n).mul(f).mul(m))
                } else {
                    Some(ModuleVec::zero())
                }
            }
            (Family::U { .. }, L(n)) => {
                if t == -n {
                    None // tabulated only for t ≠ -n
                } else {
                    sv(k * (n + t), int(t).mul(&pow(n + t)).mul(m))
                }
            }
            (Family::U { f }, I(n)) => {
                if t == -n {
                    sv(0, int(n).mul(f).mul(m))
                } else {
                    Some(ModuleVec::zero())
                }
            }
            (Family::V { .. }, L(n)) => {
                if t == -n {
                    None // tabulated only for t ≠ -n
                } else {
                    sv(k * (n + t), int(t + n).mul(&pow(n + t)).mul(m))
                }
            }
            (Family::V { f }, I(n)) => {
                if t == 0 {
                    sv(k * n, int(n).mul(f).mul(&pow(n)).mul(m))
                } else {
                    Some(ModuleVec::zero())
                }
            }
            (Family::Ut { .. }, L(n)) => {
                if t == -n {
                    Some(ModuleVec::zero())
                } else {
                    // tabulated with coefficient (t+n), not the composed t
                    sv(k * (n + t), int(t + n).mul(&pow(n + t)).mul(m))
                }
            }
            (Family::Ut { f }, I(n)) => {
                if t == -n {
                    sv(0, int(n).mul(f).mul(m))
                } else {
                    Some(ModuleVec::zero())
                }
            }
            (Family::Vt { .. }, L(n)) => {
                if t == -n {
                    Some(ModuleVec::zero())
                } else {
                    sv(k * (n + t), int(t).mul(&pow(n + t)).mul(m))
                }
            }
            (Family::Vt { f }, I(n)) => {
                // The tabulated primed line reads "0 for t ≠ 0, F·aⁿ·m₁·v_{kn}
                // at t = 0" with no n = t = 0 exclusion, unlike the untwisted
                // table; kept verbatim, so the audit flags I0 v0.
                if t == 0 {
                    sv(k * n, f.mul(&pow(n)).mul(m))
                } else {
                    Some(ModuleVec::zero())
                }
            }
        }
    }

    /// Compatibility suite: `ρ(φ_alg(g)) ∘ φ_V(v_t) = φ_V(ρ(g) v_t)` over
    /// all generators (centrals included) and basis indices in the window.
    /// Linear in the action, so the σ convention cancels.
    pub fn check_compat(&self, window: i64, max_counterexamples: usize) -> CheckReport {
        let gens = all_generators(window);
        let ts = mag_range(window);
        let mut points = Vec::with_capacity(gens.len() * ts.len());
        for &g in &gens {
            for &t in &ts {
                points.push((g, t));
            }
        }
        run_grid(
            "compat-27",
            [("g", window), ("t", window)].into(),
            self.params_map(),
            &points,
            max_counterexamples,
            |&(g, t)| {
                let lhs = act(
                    &self.family,
                    &self.endo.apply_gen(g),
                    &self.twist_vec(t),
                    Sign::Fixed,
                );
                let rhs = self.twist_apply(&act_generator(&self.family, g, t, Sign::Fixed));
                if lhs == rhs {
                    None
                } else {
                    Some(Counterexample {
                        point: Point::from([("g", PointVal::Gen(g)), ("t", PointVal::Int(t))]),
                        lhs: lhs.to_string(),
                        rhs: rhs.to_string(),
                    })
                }
            },
        )
    }

    /// Twisted-commutator suite:
    /// `ρ_φ([x,y]_φ) φ_V(v_t) = ρ_φ(φ_alg x) ρ_φ(y) v_t - ρ_φ(φ_alg y) ρ_φ(x) v_t`
    /// over generator pairs (centrals included) and basis indices.
    pub fn check_homrep(&self, window: i64, max_counterexamples: usize) -> CheckReport {
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
        run_grid(
            "homrep-26",
            [("g", window), ("h", window), ("t", window)].into(),
            self.params_map(),
            &points,
            max_counterexamples,
            |&(g, h, t)| {
                let hom_br = self.endo.apply(&bracket_basis(g, h));
                let lhs = self.hom_act(&hom_br, &self.twist_vec(t));
                let rhs = self
                    .hom_act(&self.endo.apply_gen(g), &self.hom_act_basis(h, t))
                    .sub(&self.hom_act(&self.endo.apply_gen(h), &self.hom_act_basis(g, t)));
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

    /// Compare the tabulated primed closed forms against the machine
    /// composition `φ_V ∘ (tabulated action)` coefficientwise; entries list
    /// every mismatch on the window (tabulated gaps are skipped).
    pub fn audit_closed_forms(&self, window: i64) -> AuditReport {
        let mut entries = Vec::new();
        for g in indexed_generators(window) {
            for t in mag_range(window) {
                let Some(printed) = self.hom_act_printed(g, t) else {
                    continue;
                };
                let derived = self.twist_apply(&act_printed(&self.family, g, t));
                if printed != derived {
                    entries.push(AuditEntry {
                        component: format!("{g} v{t}"),
                        printed: printed.to_string(),
                        derived: derived.to_string(),
                        matches: false,
                    });
                }
            }
        }
        let p = self.params_map();
        AuditReport {
            subject: format!(
                "closed-forms {} k={} a={} b={} c={} d={} norm={}",
                self.family.tag(),
                p["k"],
                p["a"],
                p["b"],
                p["c"],
                p["d"],
                p["norm"]
            ),
            entries,
            checks: vec![],
        }
    }

    /// Weight criterion: L_0 acts diagonally iff the twist fixes indices,
    /// i.e. k = 1 and q = 0.
    pub fn is_weight_module(&self) -> bool {
        self.params().k() == 1 && self.q == 0
    }
}

/// Basis of the compatibility solution space on a finite index box,
/// restricted to interior rows.
#[derive(Clone, PartialEq, Debug)]
pub struct TwistSolution {
    /// Interior row bound: basis entries have |t| ≤ t_bound.
    pub t_bound: i64,
    /// Column bound used when assembling the system.
    pub j_bound: i64,
    /// Reduced row-echelon basis of the interior-restricted solution space.
    pub basis: Vec<BTreeMap<(i64, i64), Scalar>>,
}

impl TwistSolution {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Membership test against the echelon basis.
    pub fn contains(&self, matrix: &BTreeMap<(i64, i64), Scalar>) -> bool {
        let mut rest: BTreeMap<(i64, i64), Scalar> = matrix
            .iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        for row in &self.basis {
            let Some((pivot, pivot_val)) = row.iter().next() else {
                continue;
            };
            if let Some(c) = rest.get(pivot).cloned() {
                let factor = c.div(pivot_val).expect("pivot is nonzero");
                for (key, val) in row {
                    let cur = rest.remove(key).unwrap_or_else(Scalar::zero);
                    let next = cur.sub(&factor.mul(val));
                    if !next.is_zero() {
                        rest.insert(*key, next);
                    }
                }
            }
        }
        rest.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        let basis: Vec<Value> = self
            .basis
            .iter()
            .map(|row| {
                Value::Array(
                    row.iter()
                        .map(|(&(t, j), v)| {
                            let mut e = Map::new();
                            e.insert("j".into(), json!(j));
                            e.insert("t".into(), json!(t));
                            e.insert("value".into(), json!(v.to_string()));
                            Value::Object(e)
                        })
                        .collect(),
                )
            })
            .collect();
        map.insert("basis".into(), Value::Array(basis));
        map.insert("dimension".into(), json!(self.basis.len()));
        map.insert("j_bound".into(), json!(self.j_bound));
        map.insert("t_bound".into(), json!(self.t_bound));
        Value::Object(map)
    }
}

/// Solve the compatibility condition for a general twist matrix `a_{t,j}`
/// on the box `|t| ≤ window`, `|j| ≤ K` with `K = |k|·window + |q| + |k|`.
/// Only equations whose referenced unknowns all lie inside the box are
/// imposed; the returned basis spans the solution space restricted to
/// interior rows `|t| ≤ window - |k|`.
pub fn solve_twist_window(
    family: &Family,
    params: &EndoParams,
    window: i64,
) -> Result<TwistSolution, HomrepError> {
    let k = params.k();
    let k_abs = k.abs();
    if window < k_abs {
        return Err(HomrepError::WindowTooSmall { window, k_abs });
    }
    let q_abs = match family {
        Family::Abf { alpha, f, .. } => dense_offset(alpha, f, params)
            .to_i64()
            .map(i64::abs)
            .unwrap_or(0),
        _ => 0,
    };
    let t_max = window;
    let j_max = k_abs * window + q_abs + k_abs;
    let t_dim = (2 * t_max + 1) as usize;
    let j_dim = (2 * j_max + 1) as usize;
    let ncols = t_dim * j_dim;
    let col = |t: i64, j: i64| -> usize { ((t + t_max) as usize) * j_dim + ((j + j_max) as usize) };

    let zeros = DeltaCorrections::zeros();
    let mut reducer = RowReducer::new(ncols);
    for n in -window..=window {
        for g in [Generator::L(n), Generator::I(n)] {
            // φ_alg(g): central corrections act as zero, so none are needed.
            let image = apply_endo(params, &zeros, &AlgElement::generator(g));
            for t in -t_max..=t_max {
                let rhs_action = act_generator(family, g, t, Sign::Fixed);
                let (target_t, mu) = match rhs_action.iter().next() {
                    Some((tt, c)) => (Some(tt), c.clone()),
                    None => (None, Scalar::zero()),
                };
                for r in -(j_max + k_abs * window)..=(j_max + k_abs * window) {
                    let j = r - k * n;
                    let lambda = act(family, &image, &ModuleVec::basis(j), Sign::Fixed).coeff(r);
                    if !lambda.is_zero() && j.abs() > j_max {
                        continue; // references a_{t,j} outside the box
                    }
                    let mut row = Row::new();
                    if !lambda.is_zero() {
                        row.add_to(col(t, j), &lambda);
                    }
                    if !mu.is_zero() {
                        if r.abs() > j_max {
                            continue; // references a_{t', r} outside the box
                        }
                        let tt = target_t.expect("nonzero action has a target");
                        if tt.abs() > t_max {
                            continue;
                        }
                        row.add_to(col(tt, r), &mu.neg());
                    }
                    if row.coeffs.is_empty() {
                        continue;
                    }
                    reducer
                        .add_row(row, None)
                        .expect("homogeneous rows cannot be inconsistent");
                }
            }
        }
    }

    let t_bound = t_max - k_abs;
    let mut projector = RowReducer::new(ncols);
    for vec in reducer.nullspace() {
        let mut row = Row::new();
        for t in -t_bound..=t_bound {
            for j in -j_max..=j_max {
                let v = &vec[col(t, j)];
                if !v.is_zero() {
                    row.set(col(t, j), v.clone());
                }
            }
        }
        if !row.coeffs.is_empty() {
            projector
                .add_row(row, None)
                .expect("homogeneous rows cannot be inconsistent");
        }
    }
    let basis = projector
        .into_row_basis()
        .into_iter()
        .map(|coeffs| {
            coeffs
                .into_iter()
                .map(|(c, v)| {
                    let t = (c / j_dim) as i64 - t_max;
                    let j = (c % j_dim) as i64 - j_max;
                    ((t, j), v)
                })
                .collect()
        })
        .collect();
    Ok(TwistSolution {
        t_bound,
        j_bound: j_max,
        basis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(t: &str) -> Scalar {
        Scalar::parse(t).unwrap()
    }

    fn params(k: i64, a: &str, b: &str, c: &str, d: &str) -> EndoParams {
        EndoParams::new(k, s(a), s(b), s(c), s(d)).unwrap()
    }

    fn abf(alpha: &str, beta: &str, f: &str) -> Family {
        Family::Abf {
            alpha: s(alpha),
            beta: s(beta),
            f: s(f),
        }
    }

    #[test]
    fn admissibility_derives_q_and_rejects_violations() {
        let fam = abf("1/3", "0", "1");
        let q = admissibility(&fam, &params(4, "1", "1", "0", "0")).unwrap();
        assert_eq!(q, 1); // 4/3 - 1/3

        let err = admissibility(&fam, &params(4, "1", "2", "0", "0")).unwrap_err();
        assert_eq!(err.name, "b = 1");

        // q must be integral: d = 1/3 gives q = 1 - 4/3
        let err = admissibility(&fam, &params(4, "1", "1", "0", "1/3")).unwrap_err();
        assert!(err.name.starts_with("q ="));

        // af at k=2 forces b = 1/2 and c = -1/2
        let fam = Family::Af {
            alpha: s("1/3"),
            f: s("1"),
        };
        assert!(admissibility(&fam, &params(2, "1", "1/2", "-1/2", "0")).is_ok());
        let err = admissibility(&fam, &params(2, "1", "1/2", "0", "0")).unwrap_err();
        assert_eq!(err.name, "1 - k - k*F*c = 0");
        let err = admissibility(&fam, &params(2, "1", "1", "-1/2", "0")).unwrap_err();
        assert_eq!(err.name, "k*b = 1");
        let err = admissibility(&fam, &params(2, "1", "1/2", "-1/2", "1")).unwrap_err();
        assert_eq!(err.name, "d = 0");

        // alpha must not be a nonzero integer for af/bf
        let fam = Family::Af {
            alpha: s("2"),
            f: s("1"),
        };
        assert!(admissibility(&fam, &params(1, "1", "1", "0", "0")).is_err());

        // bf flips the sign of the c constraint
        let fam = Family::Bf {
            alpha: s("1/3"),
            f: s("1"),
        };
        assert!(admissibility(&fam, &params(2, "1", "1/2", "1/2", "0")).is_ok());

        // F = 0 degenerates the c constraint to k = 1
        let fam = Family::Af {
            alpha: s("1/3"),
            f: s("0"),
        };
        assert!(admissibility(&fam, &params(1, "1", "1", "7", "0")).is_ok());
        assert!(admissibility(&fam, &params(2, "1", "1/2", "0", "0")).is_err());

        // vt requires b = 1, not kb = 1
        let fam = Family::Vt { f: s("1") };
        assert!(admissibility(&fam, &params(2, "1", "1", "0", "0")).is_ok());
        assert!(admissibility(&fam, &params(2, "1", "1/2", "0", "0")).is_err());
    }

    #[test]
    fn spec_construction_and_twist() {
        let spec = HomModuleSpec::new(
            abf("1", "0", "1"),
            params(2, "3", "1", "0", "0"),
            Scalar::one(),
        )
        .unwrap();
        assert_eq!(spec.q(), 1);
        assert_eq!(spec.twist_vec(2), ModuleVec::single(5, s("9")));
        assert_eq!(spec.twist_vec(0), ModuleVec::single(1, s("1")));

        let identity = HomModuleSpec::new(
            abf("1/3", "1/5", "2"),
            EndoParams::identity(),
            Scalar::one(),
        )
        .unwrap();
        assert_eq!(identity.twist_vec(-4), ModuleVec::basis(-4));

        assert!(matches!(
            HomModuleSpec::new(abf("1", "0", "1"), params(2, "3", "1", "0", "0"), s("0")),
            Err(HomrepError::ZeroNorm)
        ));
    }

    #[test]
    fn hom_act_composes_twist_after_action() {
        let spec = HomModuleSpec::new(
            abf("1/3", "0", "1"),
            params(4, "1", "1", "0", "0"),
            Scalar::one(),
        )
        .unwrap();
        let out = spec.hom_act(
            &AlgElement::generator(Generator::L(1)),
            &ModuleVec::basis(0),
        );
        assert_eq!(out, ModuleVec::single(5, s("-1/3")));

        assert!(spec
            .hom_act(&AlgElement::generator(Generator::CI), &ModuleVec::basis(3))
            .is_zero());

        // identity spec: hom_act = act
        let spec = HomModuleSpec::new(
            abf("1/3", "1/5", "2"),
            EndoParams::identity(),
            Scalar::one(),
        )
        .unwrap();
        let x = AlgElement::generator(Generator::L(2));
        let v = ModuleVec::basis(3);
        assert_eq!(
            spec.hom_act(&x, &v),
            act(spec.family(), &x, &v, Sign::Fixed)
        );
    }

    #[test]
    fn printed_closed_forms() {
        // dense family: (α+t+βn) a^{n+t} m v_{k(n+t)+q}
        let spec = HomModuleSpec::new(
            abf("1/3", "0", "1"),
            params(4, "1", "1", "0", "0"),
            Scalar::one(),
        )
        .unwrap();
        assert_eq!(
            spec.hom_act_printed(Generator::L(1), 0).unwrap(),
            ModuleVec::single(5, s("1/3"))
        );

        // af carries the stray factor k on the generic L line
        let spec = HomModuleSpec::new(
            Family::Af {
                alpha: s("1/3"),
                f: s("1"),
            },
            params(2, "2", "1/2", "-1/2", "0"),
            Scalar::one(),
        )
        .unwrap();
        assert_eq!(
            spec.hom_act_printed(Generator::L(1), 1).unwrap(),
            ModuleVec::single(4, s("16")) // (t+n)·k·a² = 2·2·4
        );

        // bf special line: I_2 v_{-2} = 2F·m·v_0
        let spec = HomModuleSpec::new(
            Family::Bf {
                alpha: s("1/3"),
                f: s("1"),
            },
            params(2, "2", "1/2", "1/2", "0"),
            Scalar::one(),
        )
        .unwrap();
        assert_eq!(
            spec.hom_act_printed(Generator::I(2), -2).unwrap(),
            ModuleVec::single(0, s("2"))
        );

        // u has no tabulated L entry at t = -n
        let spec = HomModuleSpec::new(
            Family::U { f: s("1") },
            params(2, "2", "1/2", "0", "0"),
            Scalar::one(),
        )
        .unwrap();
        assert!(spec.hom_act_printed(Generator::L(3), -3).is_none());
    }

    #[test]
    fn compat_and_homrep_checks() {
        let spec = HomModuleSpec::new(
            abf("1/3", "1/5", "1"),
            params(4, "1", "1", "0", "0"),
            Scalar::one(),
        )
        .unwrap();
        assert!(spec.check_compat(4, 5).passed());
        assert!(spec.check_homrep(3, 5).passed());

        // mutate b: compatibility picks up b on one side only
        let bad = HomModuleSpec::new_unchecked(
            abf("1/3", "1/5", "1"),
            params(4, "1", "2", "0", "0"),
            Scalar::one(),
        )
        .unwrap();
        let report = bad.check_compat(4, 5);
        assert!(!report.passed());
        assert_eq!(
            report.counterexamples[0].point,
            Point::from([
                ("g", PointVal::Gen(Generator::I(0))),
                ("t", PointVal::Int(0)),
            ])
        );
        assert!(!bad.check_homrep(3, 5).passed());

        // identity spec: homrep reduces to the module axiom
        let spec = HomModuleSpec::new(
            abf("1/3", "1/5", "2"),
            EndoParams::identity(),
            Scalar::one(),
        )
        .unwrap();
        assert!(spec.check_compat(4, 5).passed());
        assert!(spec.check_homrep(3, 5).passed());

        // dense family with free d: q = -Fd compensates inside (compat)
        let spec = HomModuleSpec::new(
            abf("1/3", "1/5", "1"),
            params(1, "2", "1", "0", "-1"),
            Scalar::one(),
        )
        .unwrap();
        assert_eq!(spec.q(), 1);
        assert!(spec.check_compat(4, 5).passed());
        assert!(spec.check_homrep(3, 5).passed());
    }

    #[test]
    fn closed_form_audit_flags_only_the_tabulated_discrepancies() {
        let spec = HomModuleSpec::new(
            abf("1/3", "1/5", "1"),
            params(4, "2", "1", "0", "0"),
            Scalar::one(),
        )
        .unwrap();
        assert!(spec.audit_closed_forms(4).identical());

        let spec = HomModuleSpec::new(
            Family::Af {
                alpha: s("1/3"),
                f: s("1"),
            },
            params(2, "2", "1/2", "-1/2", "0"),
            Scalar::one(),
        )
        .unwrap();
        let audit = spec.audit_closed_forms(4);
        assert!(!audit.identical());
        for e in &audit.entries {
            assert!(e.component.starts_with('L'), "unexpected mismatch {e:?}");
        }

        // ut: the tabulated generic L coefficient is (t+n), the composition
        // gives t.
        let spec = HomModuleSpec::new(
            Family::Ut { f: s("1") },
            params(2, "2", "1/2", "0", "0"),
            Scalar::one(),
        )
        .unwrap();
        let audit = spec.audit_closed_forms(4);
        assert!(!audit.identical());
        for e in &audit.entries {
            assert!(e.component.starts_with('L'), "unexpected mismatch {e:?}");
        }

        // vt: the tabulated I line loses the n = t = 0 exclusion of the
        // untwisted table, so I0 v0 is the single mismatch.
        let spec = HomModuleSpec::new(
            Family::Vt { f: s("1") },
            params(2, "2", "1", "0", "0"),
            Scalar::one(),
        )
        .unwrap();
        let audit = spec.audit_closed_forms(4);
        let components: Vec<&str> = audit.entries.iter().map(|e| e.component.as_str()).collect();
        assert_eq!(components, vec!["I0 v0"]);
        assert_eq!(audit.entries[0].printed, "v0");
        assert_eq!(audit.entries[0].derived, "0");
    }

    #[test]
    fn delta_corrections_never_reach_the_module_side() {
        // Central generators act trivially, so swapping calibrated
        // corrections for the tabulated ones cannot change any module-side
        // report.
        let mut spec = HomModuleSpec::new(
            abf("1/3", "1/5", "1"),
            params(4, "2", "1", "0", "0"),
            Scalar::one(),
        )
        .unwrap();
        let compat = spec.check_compat(4, 5);
        let homrep = spec.check_homrep(3, 5);
        spec.endo.corrections = crate::endo::printed_corrections(&spec.endo.params);
        assert_eq!(spec.check_compat(4, 5), compat);
        assert_eq!(spec.check_homrep(3, 5), homrep);
    }

    #[test]
    fn weight_criterion() {
        let spec = HomModuleSpec::new(
            abf("1/3", "1/5", "2"),
            EndoParams::identity(),
            Scalar::one(),
        )
        .unwrap();
        assert!(spec.is_weight_module());

        // k = 1 but q = -Fd = 1
        let spec = HomModuleSpec::new(
            abf("1/3", "1/5", "1"),
            params(1, "1", "1", "0", "-1"),
            Scalar::one(),
        )
        .unwrap();
        assert_eq!(spec.q(), 1);
        assert!(!spec.is_weight_module());

        let spec = HomModuleSpec::new(
            abf("1", "0", "1"),
            params(2, "1", "1", "0", "0"),
            Scalar::one(),
        )
        .unwrap();
        assert!(!spec.is_weight_module());

        let spec = HomModuleSpec::new(
            Family::V { f: s("2") },
            params(1, "2", "1", "0", "0"),
            Scalar::one(),
        )
        .unwrap();
        assert!(spec.is_weight_module());
    }

    #[test]
    fn twist_is_injective_on_basis_vectors() {
        let spec = HomModuleSpec::new(
            abf("1", "0", "1"),
            params(-2, "3+i", "1", "0", "0"),
            s("5/7"),
        )
        .unwrap();
        let mut seen = std::collections::BTreeSet::new();
        for t in -6..=6 {
            let image = spec.twist_vec(t);
            assert_eq!(image.len(), 1);
            let (target, coeff) = image.iter().next().unwrap();
            assert!(!coeff.is_zero());
            assert!(seen.insert(target), "twist target {target} repeated");
        }
    }

    #[test]
    fn twist_solver_recovers_the_closed_form_for_a_sparse_family() {
        let fam = Family::V { f: s("1") };
        let params = params(3, "2", "1/3", "0", "0");
        let sol = solve_twist_window(&fam, &params, 4).unwrap();
        assert_eq!(sol.dimension(), 1);
        // closed form a_{t,3t} = aᵗ·m with a = 2 on interior rows |t| ≤ 1
        let closed: BTreeMap<(i64, i64), Scalar> = (-sol.t_bound..=sol.t_bound)
            .map(|t| ((t, 3 * t), s("2").pow_int(t).unwrap()))
            .collect();
        assert!(sol.contains(&closed));
    }

    #[test]
    fn twist_solver_small_identity_case() {
        // identity endomorphism on the dense family: q = 0, diagonal twist
        let fam = abf("1/3", "0", "1");
        let sol = solve_twist_window(&fam, &EndoParams::identity(), 4).unwrap();
        assert_eq!(sol.dimension(), 1);
        let diagonal: BTreeMap<(i64, i64), Scalar> = (-sol.t_bound..=sol.t_bound)
            .map(|t| ((t, t), Scalar::one()))
            .collect();
        assert!(sol.contains(&diagonal));

        assert!(matches!(
            solve_twist_window(&fam, &params(5, "1", "1", "0", "0"), 4),
            Err(HomrepError::WindowTooSmall { .. })
        ));
    }

    #[test]
    fn twist_solver_handles_negative_index_maps() {
        // k = -2 on the dense family: q = -3, pattern a_{t,-2t-3} = aᵗ
        let fam = abf("1", "0", "1");
        let sol = solve_twist_window(&fam, &params(-2, "2", "1", "0", "0"), 4).unwrap();
        assert_eq!(sol.dimension(), 1);
        let closed: BTreeMap<(i64, i64), Scalar> = (-sol.t_bound..=sol.t_bound)
            .map(|t| ((t, -2 * t - 3), s("2").pow_int(t).unwrap()))
            .collect();
        assert!(sol.contains(&closed));
    }
}
