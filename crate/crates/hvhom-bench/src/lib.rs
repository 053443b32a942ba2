//! Shared fixtures for the criterion benchmarks.

use hvhom_core::{EndoParams, Family, Scalar};

pub fn generic_family() -> Family {
    Family::Abf {
        alpha: Scalar::from_ratio(1, 3),
        beta: Scalar::from_ratio(1, 5),
        f: Scalar::from_int(2),
    }
}

pub fn stretch_params() -> EndoParams {
    EndoParams::new(
        2,
        Scalar::from_int(1),
        Scalar::from_ratio(1, 2),
        Scalar::zero(),
        Scalar::zero(),
    )
    .expect("valid parameters")
}
