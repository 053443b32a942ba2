//! Exact-arithmetic toolkit for the twisted Heisenberg-Virasoro algebra:
//! the algebra itself, its endomorphism family with machine-calibrated
//! central corrections, Yau-twisted (Hom-Lie) structures, the seven
//! intermediate-series module families, twisted module constructions, and
//! an identity-suite harness with deterministic JSON reports.
//!
//! All coefficients live in ℚ(i) with arbitrary-precision components, so
//! every identity is checked to exact zero; identities with polynomial
//! coefficients in the indices are verified exhaustively on finite index
//! windows, which the degree bounds make conclusive.

#![forbid(unsafe_code)]

pub mod algebra;
pub mod endo;
pub mod harness;
pub mod homlie;
pub mod homrep;
pub mod intermediate;
pub mod linalg;
pub mod report;
pub mod scalar;

pub use algebra::{
    bracket, bracket_basis, check_antisymmetry, check_jacobi, AlgElement, Generator,
};
pub use endo::{
    apply_endo, audit_corrections, audit_shear, calibrate_corrections, check_homomorphism,
    printed_corrections, shear_endo, DeltaCorrections, EndoError, EndoParams, Endomorphism,
    CORRECTION_NAMES,
};
pub use harness::{run_suite, HarnessError, SuiteConfig, SuiteKind};
pub use homlie::{check_hom_jacobi, check_multiplicative, hom_bracket, induced_bracket};
pub use homrep::{
    admissibility, solve_twist_window, ConstraintViolation, HomModuleSpec, HomrepError,
    TwistSolution,
};
pub use intermediate::{
    act, act_generator, act_generator_vec, act_printed, check_lie_module, orbit_window_span,
    Family, ModuleVec, Sign,
};
pub use report::{
    canonical_bytes, emit_to_path, AuditEntry, AuditReport, CheckReport, Counterexample, Point,
    PointVal, Status, DEFAULT_MAX_COUNTEREXAMPLES, DEFAULT_PAIR_WINDOW, DEFAULT_TRIPLE_WINDOW,
};
pub use scalar::{Scalar, ScalarError};
