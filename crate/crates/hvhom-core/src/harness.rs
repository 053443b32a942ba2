//! Suite registry: named identity suites dispatched from one config, each
//! producing a deterministic [`CheckReport`].
//!
//! | suite          | grid                      | default window |
//! |----------------|---------------------------|----------------|
//! | antisym        | indexed generator pairs   | 8              |
//! | jacobi         | indexed generator triples | 6              |
//! | endo-hom       | indexed generator pairs   | 8              |
//! | hom-jacobi     | indexed generator triples | 6              |
//! | multiplicative | indexed generator pairs   | 8              |
//! | lie-module     | generator pairs × t       | 6              |
//! | compat-27      | generators × t            | 8              |
//! | homrep-26      | generator pairs × t       | 6              |
//!
//! Algebra-side suites quantify over the indexed generators L_n, I_n;
//! module-side suites include the central generators (their cases are
//! trivial but tabulated actions mention them explicitly).

use std::str::FromStr;

use thiserror::Error;

use crate::algebra::{check_antisymmetry, check_jacobi};
use crate::endo::{check_homomorphism, EndoError, EndoParams, Endomorphism};
use crate::homlie::{check_hom_jacobi, check_multiplicative};
use crate::homrep::{HomModuleSpec, HomrepError};
use crate::intermediate::{check_lie_module, Family, Sign};
use crate::report::{
    CheckReport, DEFAULT_MAX_COUNTEREXAMPLES, DEFAULT_PAIR_WINDOW, DEFAULT_TRIPLE_WINDOW,
};
use crate::scalar::Scalar;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("suite {suite} requires parameter {param}")]
    MissingParam {
        suite: &'static str,
        param: &'static str,
    },
    #[error(transparent)]
    Endo(#[from] EndoError),
    #[error(transparent)]
    Homrep(#[from] HomrepError),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SuiteKind {
    Antisym,
    Jacobi,
    EndoHom,
    HomJacobi,
    Multiplicative,
    LieModule,
    Compat27,
    Homrep26,
}

impl SuiteKind {
    pub const ALL: [SuiteKind; 8] = [
        SuiteKind::Antisym,
        SuiteKind::Jacobi,
        SuiteKind::EndoHom,
        SuiteKind::HomJacobi,
        SuiteKind::Multiplicative,
        SuiteKind::LieModule,
        SuiteKind::Compat27,
        SuiteKind::Homrep26,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SuiteKind::Antisym => "antisym",
            SuiteKind::Jacobi => "jacobi",
            SuiteKind::EndoHom => "endo-hom",
            SuiteKind::HomJacobi => "hom-jacobi",
            SuiteKind::Multiplicative => "multiplicative",
            SuiteKind::LieModule => "lie-module",
            SuiteKind::Compat27 => "compat-27",
            SuiteKind::Homrep26 => "homrep-26",
        }
    }

    pub fn default_window(self) -> i64 {
        match self {
            SuiteKind::Jacobi
            | SuiteKind::HomJacobi
            | SuiteKind::LieModule
            | SuiteKind::Homrep26 => DEFAULT_TRIPLE_WINDOW,
            _ => DEFAULT_PAIR_WINDOW,
        }
    }
}

impl FromStr for SuiteKind {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SuiteKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| HarnessError::UnknownSuite(s.to_string()))
    }
}

/// Inputs for one suite run. Only the fields the suite consumes are
/// required; the rest are ignored.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub suite: SuiteKind,
    pub window: Option<i64>,
    pub max_counterexamples: usize,
    pub endo: Option<EndoParams>,
    pub family: Option<Family>,
    pub sign: Sign,
    pub norm: Scalar,
}

impl SuiteConfig {
    pub fn new(suite: SuiteKind) -> Self {
        SuiteConfig {
            suite,
            window: None,
            max_counterexamples: DEFAULT_MAX_COUNTEREXAMPLES,
            endo: None,
            family: None,
            sign: Sign::Fixed,
            norm: Scalar::one(),
        }
    }
}

/// Run the configured suite. Endomorphism-backed suites calibrate their
/// corrections first; spec-backed suites validate admissibility, so
/// constraint violations surface as errors rather than failed reports.
pub fn run_suite(config: &SuiteConfig) -> Result<CheckReport, HarnessError> {
    let window = config
        .window
        .unwrap_or_else(|| config.suite.default_window());
    let max_cx = config.max_counterexamples;
    let suite = config.suite;
    let need_endo = |field: &Option<EndoParams>| {
        field.clone().ok_or(HarnessError::MissingParam {
            suite: suite.name(),
            param: "endo (k, a, b, c, d)",
        })
    };
    let need_family = |field: &Option<Family>| {
        field.clone().ok_or(HarnessError::MissingParam {
            suite: suite.name(),
            param: "family",
        })
    };
    match suite {
        SuiteKind::Antisym => Ok(check_antisymmetry(window, max_cx)),
        SuiteKind::Jacobi => Ok(check_jacobi(window, max_cx)),
        SuiteKind::EndoHom => {
            let endo = Endomorphism::calibrated(need_endo(&config.endo)?, window.max(3))?;
            Ok(check_homomorphism(&endo, window, max_cx))
        }
        SuiteKind::HomJacobi => {
            let endo = Endomorphism::calibrated(need_endo(&config.endo)?, window.max(3))?;
            Ok(check_hom_jacobi(&endo, window, max_cx))
        }
        SuiteKind::Multiplicative => {
            let endo = Endomorphism::calibrated(need_endo(&config.endo)?, window.max(3))?;
            Ok(check_multiplicative(&endo, window, max_cx))
        }
        SuiteKind::LieModule => {
            let family = need_family(&config.family)?;
            Ok(check_lie_module(&family, window, config.sign, max_cx))
        }
        SuiteKind::Compat27 => {
            let spec = HomModuleSpec::new(
                need_family(&config.family)?,
                need_endo(&config.endo)?,
                config.norm.clone(),
            )?;
            Ok(spec.check_compat(window, max_cx))
        }
        SuiteKind::Homrep26 => {
            let spec = HomModuleSpec::new(
                need_family(&config.family)?,
                need_endo(&config.endo)?,
                config.norm.clone(),
            )?;
            Ok(spec.check_homrep(window, max_cx))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for kind in SuiteKind::ALL {
            assert_eq!(kind.name().parse::<SuiteKind>().unwrap(), kind);
        }
        assert!(matches!(
            "nope".parse::<SuiteKind>(),
            Err(HarnessError::UnknownSuite(_))
        ));
    }

    #[test]
    fn jacobi_counts_indexed_generator_triples() {
        let mut config = SuiteConfig::new(SuiteKind::Jacobi);
        config.window = Some(6);
        let report = run_suite(&config).unwrap();
        assert!(report.passed());
        assert_eq!(report.checked, 17576); // (2·13)³
    }

    #[test]
    fn endo_suite_with_identity_parameters() {
        let mut config = SuiteConfig::new(SuiteKind::EndoHom);
        config.window = Some(4);
        config.endo = Some(EndoParams::identity());
        let report = run_suite(&config).unwrap();
        assert!(report.passed());
    }

    #[test]
    fn missing_parameters_are_errors() {
        let config = SuiteConfig::new(SuiteKind::LieModule);
        assert!(matches!(
            run_suite(&config),
            Err(HarnessError::MissingParam { .. })
        ));
    }

    #[test]
    fn failing_suites_stay_failing_on_larger_windows() {
        let mut config = SuiteConfig::new(SuiteKind::LieModule);
        config.family = Some(Family::Abf {
            alpha: Scalar::from_ratio(1, 3),
            beta: Scalar::from_ratio(1, 5),
            f: Scalar::from_int(2),
        });
        config.sign = Sign::Printed;
        config.window = Some(3);
        let small = run_suite(&config).unwrap();
        config.window = Some(5);
        let large = run_suite(&config).unwrap();
        assert!(!small.passed() && !large.passed());
        assert!(small.failures <= large.failures);
    }

    #[test]
    fn reports_are_byte_identical_across_runs() {
        let mut config = SuiteConfig::new(SuiteKind::LieModule);
        config.window = Some(4);
        config.family = Some(Family::Abf {
            alpha: Scalar::from_ratio(1, 3),
            beta: Scalar::from_ratio(1, 5),
            f: Scalar::from_int(2),
        });
        config.sign = Sign::Printed;
        let a = run_suite(&config).unwrap();
        let b = run_suite(&config).unwrap();
        assert!(!a.passed());
        assert_eq!(a.canonical_bytes(), b.canonical_bytes());
    }
}
