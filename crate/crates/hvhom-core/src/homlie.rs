//! The Yau twist: a calibrated endomorphism φ turns the bracket into the
//! Hom-bracket `[x,y]_φ := φ([x,y])`, giving a multiplicative Hom-Lie
//! algebra. The checkers here verify the twisted laws on index windows:
//! antisymmetry comes for free, the Hom-Jacobi identity
//!
//! ```text
//! [φ(x), [y,z]_φ]_φ + [φ(y), [z,x]_φ]_φ + [φ(z), [x,y]_φ]_φ = 0
//! ```
//!
//! and multiplicativity `φ([x,y]_φ) = [φ(x), φ(y)]_φ`. For invertible
//! twists (k = ±1, b ≠ 0) the original bracket is recovered as
//! `φ⁻¹ ∘ [·,·]_φ`, the induced-algebra direction computable at desk scale.

use crate::algebra::{bracket, bracket_basis, AlgElement, Generator};
use crate::endo::{EndoError, Endomorphism};
use crate::report::{indexed_generators, run_grid, CheckReport, Counterexample, Point, PointVal};

/// `[x,y]_φ = φ([x,y])`.
pub fn hom_bracket(endo: &Endomorphism, x: &AlgElement, y: &AlgElement) -> AlgElement {
    endo.apply(&bracket(x, y))
}

fn hom_bracket_basis(endo: &Endomorphism, g: Generator, h: Generator) -> AlgElement {
    endo.apply(&bracket_basis(g, h))
}

/// Hom-Jacobi suite over indexed generator triples in the window.
pub fn check_hom_jacobi(
    endo: &Endomorphism,
    window: i64,
    max_counterexamples: usize,
) -> CheckReport {
    let gens = indexed_generators(window);
    let mut points = Vec::with_capacity(gens.len().pow(3));
    for &x in &gens {
        for &y in &gens {
            for &z in &gens {
                points.push((x, y, z));
            }
        }
    }
    run_grid(
        "hom-jacobi",
        [("x", window), ("y", window), ("z", window)].into(),
        endo.params.params_map(),
        &points,
        max_counterexamples,
        |&(x, y, z)| {
            let term = |a: Generator, b: Generator, c: Generator| {
                hom_bracket(endo, &endo.apply_gen(a), &hom_bracket_basis(endo, b, c))
            };
            let sum = term(x, y, z).add(&term(y, z, x)).add(&term(z, x, y));
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

/// Multiplicativity suite: `φ([g,h]_φ) = [φ(g), φ(h)]_φ` on generator pairs.
pub fn check_multiplicative(
    endo: &Endomorphism,
    window: i64,
    max_counterexamples: usize,
) -> CheckReport {
    let gens = indexed_generators(window);
    let points: Vec<(Generator, Generator)> = gens
        .iter()
        .flat_map(|&g| gens.iter().map(move |&h| (g, h)))
        .collect();
    run_grid(
        "multiplicative",
        [("g", window), ("h", window)].into(),
        endo.params.params_map(),
        &points,
        max_counterexamples,
        |&(g, h)| {
            let lhs = endo.apply(&hom_bracket_basis(endo, g, h));
            let rhs = hom_bracket(endo, &endo.apply_gen(g), &endo.apply_gen(h));
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

/// The induced bracket `φ⁻¹([x,y]_φ)`; equals the original bracket when φ
/// is an automorphism on the window.
pub fn induced_bracket(
    endo: &Endomorphism,
    x: &AlgElement,
    y: &AlgElement,
) -> Result<AlgElement, EndoError> {
    endo.invert(&hom_bracket(endo, x, y))
}
