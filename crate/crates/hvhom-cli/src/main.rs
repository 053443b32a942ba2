//! `hvhom`: exact computations and identity audits for the twisted
//! Heisenberg-Virasoro algebra, its Hom-Lie twists and twisted modules.
//!
//! Exit codes: 0 success (and passing checks), 1 a check found a
//! counterexample, 2 usage, parse or constraint errors. Results go to
//! stdout, diagnostics to stderr. `HVHOM_WINDOW` overrides the default
//! window when `--window` is absent.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::Value as Json;

use hvhom_cli::{eval_algebra, eval_module};
use hvhom_core::{
    admissibility, audit_corrections, audit_shear, calibrate_corrections, emit_to_path,
    hom_bracket, run_suite, solve_twist_window, AuditReport, CheckReport, EndoParams, Endomorphism,
    Family, HomModuleSpec, Scalar, Sign, Status, SuiteConfig, SuiteKind, CORRECTION_NAMES,
};

fn scalar_arg(s: &str) -> Result<Scalar, String> {
    Scalar::parse(s).map_err(|e| e.to_string())
}

#[derive(Parser)]
#[command(
    name = "hvhom",
    version,
    about = "Exact toolkit for the twisted Heisenberg-Virasoro algebra, its Hom-Lie twists and twisted modules",
    arg_required_else_help = true
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct EndoArgs {
    /// Index multiplier k (nonzero integer)
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    k: i64,
    /// Scalar a (nonzero)
    #[arg(long, default_value = "1", value_parser = scalar_arg, allow_hyphen_values = true)]
    a: Scalar,
    /// Scalar b
    #[arg(long, default_value = "1", value_parser = scalar_arg, allow_hyphen_values = true)]
    b: Scalar,
    /// Scalar c
    #[arg(long, default_value = "0", value_parser = scalar_arg, allow_hyphen_values = true)]
    c: Scalar,
    /// Scalar d
    #[arg(long, default_value = "0", value_parser = scalar_arg, allow_hyphen_values = true)]
    d: Scalar,
}

impl EndoArgs {
    fn build(&self) -> Result<EndoParams, CliError> {
        EndoParams::new(
            self.k,
            self.a.clone(),
            self.b.clone(),
            self.c.clone(),
            self.d.clone(),
        )
        .map_err(|e| CliError(e.to_string()))
    }
}

#[derive(Args, Clone)]
struct FamilyArgs {
    /// Family tag: abf, af, bf, u, v, ut, vt
    #[arg(long)]
    family: String,
    /// Parameter α (abf, af, bf)
    #[arg(long, value_parser = scalar_arg, allow_hyphen_values = true)]
    alpha: Option<Scalar>,
    /// Parameter β (abf)
    #[arg(long, value_parser = scalar_arg, allow_hyphen_values = true)]
    beta: Option<Scalar>,
    /// Parameter F (all families)
    #[arg(long = "F", value_parser = scalar_arg, allow_hyphen_values = true)]
    f: Option<Scalar>,
}

impl FamilyArgs {
    fn build(&self) -> Result<Family, CliError> {
        let need = |name: &str, v: &Option<Scalar>| {
            v.clone()
                .ok_or_else(|| CliError(format!("family {} requires --{name}", self.family)))
        };
        match self.family.as_str() {
            "abf" => Ok(Family::Abf {
                alpha: need("alpha", &self.alpha)?,
                beta: need("beta", &self.beta)?,
                f: need("F", &self.f)?,
            }),
            "af" => Ok(Family::Af {
                alpha: need("alpha", &self.alpha)?,
                f: need("F", &self.f)?,
            }),
            "bf" => Ok(Family::Bf {
                alpha: need("alpha", &self.alpha)?,
                f: need("F", &self.f)?,
            }),
            "u" => Ok(Family::U {
                f: need("F", &self.f)?,
            }),
            "v" => Ok(Family::V {
                f: need("F", &self.f)?,
            }),
            "ut" => Ok(Family::Ut {
                f: need("F", &self.f)?,
            }),
            "vt" => Ok(Family::Vt {
                f: need("F", &self.f)?,
            }),
            other => Err(CliError(format!(
                "unknown family {other:?} (expected abf, af, bf, u, v, ut, vt)"
            ))),
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Bracket of two algebra expressions
    Bracket {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Twisted bracket φ(\[x,y\]) for the calibrated endomorphism
    Hombracket {
        #[command(flatten)]
        endo: EndoArgs,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Endomorphism operations
    Endo {
        #[command(subcommand)]
        cmd: EndoCmd,
    },
    /// Act an algebra expression on a module vector
    Act {
        #[command(flatten)]
        family: FamilyArgs,
        /// Use the tabulated σ=+1 actions instead of the default σ=-1
        #[arg(long)]
        printed_actions: bool,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        vector: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Twisted action ρ_φ = φ_V ∘ ρ on a module vector (admissible specs)
    Homact {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        endo: EndoArgs,
        /// Twist normalization m (nonzero)
        #[arg(long, default_value = "1", value_parser = scalar_arg, allow_hyphen_values = true)]
        norm: Scalar,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        vector: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the family's admissibility constraints; prints q for abf
    Admissible {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        endo: EndoArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve the compatibility condition for a general twist matrix
    SolveTwist {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        endo: EndoArgs,
        #[arg(long, allow_hyphen_values = true)]
        window: Option<i64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run an identity suite and emit its JSON report
    Check {
        /// antisym, jacobi, endo-hom, hom-jacobi, multiplicative,
        /// lie-module, compat-27, homrep-26
        suite: String,
        #[arg(long, allow_hyphen_values = true)]
        window: Option<i64>,
        #[command(flatten)]
        endo: EndoArgs,
        /// Family tag for module suites
        #[arg(long)]
        family: Option<String>,
        #[arg(long, value_parser = scalar_arg, allow_hyphen_values = true)]
        alpha: Option<Scalar>,
        #[arg(long, value_parser = scalar_arg, allow_hyphen_values = true)]
        beta: Option<Scalar>,
        #[arg(long = "F", value_parser = scalar_arg, allow_hyphen_values = true)]
        f: Option<Scalar>,
        /// Action sign for lie-module: "+1" or "-1"
        #[arg(long, allow_hyphen_values = true)]
        sign: Option<String>,
        /// Shorthand for --sign +1
        #[arg(long, conflicts_with = "sign")]
        printed_actions: bool,
        #[arg(long, default_value = "1", value_parser = scalar_arg, allow_hyphen_values = true)]
        norm: Scalar,
        #[arg(long, default_value_t = 5)]
        max_counterexamples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare tabulated formulas against machine-derived values
    Audit {
        #[command(subcommand)]
        cmd: AuditCmd,
    },
    /// Weight-module criterion for an admissible spec
    Weight {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        endo: EndoArgs,
        #[arg(long, default_value = "1", value_parser = scalar_arg, allow_hyphen_values = true)]
        norm: Scalar,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum EndoCmd {
    /// Apply the calibrated endomorphism to an algebra expression
    Apply {
        #[command(flatten)]
        endo: EndoArgs,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve for the eleven correction coefficients
    Calibrate {
        #[command(flatten)]
        endo: EndoArgs,
        #[arg(long, allow_hyphen_values = true)]
        window: Option<i64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
#[allow(clippy::large_enum_variant)]
enum AuditCmd {
    /// Correction coefficients: tabulated vs calibrated, with suite runs
    Thm22 {
        #[command(flatten)]
        endo: EndoArgs,
        #[arg(long, allow_hyphen_values = true)]
        window: Option<i64>,
        #[arg(long, default_value_t = 5)]
        max_counterexamples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The shear family (k=1, a=1, b=1, c=0, free d)
    Lemma28 {
        #[arg(long, default_value = "0", value_parser = scalar_arg, allow_hyphen_values = true)]
        d: Scalar,
        #[arg(long, allow_hyphen_values = true)]
        window: Option<i64>,
        #[arg(long, default_value_t = 5)]
        max_counterexamples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Primed closed forms vs the twist-action composition
    Section3 {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        endo: EndoArgs,
        #[arg(long, default_value = "1", value_parser = scalar_arg, allow_hyphen_values = true)]
        norm: Scalar,
        #[arg(long, allow_hyphen_values = true)]
        window: Option<i64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

struct CliError(String);

macro_rules! cli_error_from {
    ($($ty:ty),* $(,)?) => {
        $(impl From<$ty> for CliError {
            fn from(e: $ty) -> Self {
                CliError(e.to_string())
            }
        })*
    };
}

cli_error_from!(
    String,
    hvhom_core::EndoError,
    hvhom_core::HomrepError,
    hvhom_core::HarnessError,
    hvhom_core::ConstraintViolation,
);

/// Write one line to stdout; a closed pipe (`hvhom ... | head`) ends the
/// process quietly instead of panicking.
fn emit(text: impl std::fmt::Display) -> Result<(), CliError> {
    use std::io::Write;
    let mut stdout = std::io::stdout().lock();
    match writeln!(stdout, "{text}") {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => std::process::exit(0),
        Err(e) => Err(CliError(format!("stdout: {e}"))),
    }
}

/// `--window` flag, else HVHOM_WINDOW, else per-command default.
fn resolve_window(flag: Option<i64>) -> Option<i64> {
    flag.or_else(|| {
        std::env::var("HVHOM_WINDOW")
            .ok()
            .and_then(|s| s.parse().ok())
    })
}

fn write_out(json: &Json, out: &Option<PathBuf>) -> Result<(), CliError> {
    if let Some(path) = out {
        emit_to_path(json, path).map_err(|e| CliError(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn print_report(report: &CheckReport, out: &Option<PathBuf>) -> Result<i32, CliError> {
    let json = report.to_json();
    emit(String::from_utf8_lossy(&hvhom_core::canonical_bytes(&json)).trim_end())?;
    write_out(&json, out)?;
    Ok(match report.status {
        Status::Pass => 0,
        Status::Fail => 1,
    })
}

fn print_audit(report: &AuditReport, out: &Option<PathBuf>) -> Result<i32, CliError> {
    let json = report.to_json();
    emit(String::from_utf8_lossy(&hvhom_core::canonical_bytes(&json)).trim_end())?;
    write_out(&json, out)?;
    Ok(0)
}

/// Print an element (or module vector) in canonical text; with `--out`,
/// also write it as canonical JSON.
fn emit_element(value: impl std::fmt::Display, out: &Option<PathBuf>) -> Result<i32, CliError> {
    let text = value.to_string();
    emit(&text)?;
    if out.is_some() {
        let mut map = serde_json::Map::new();
        map.insert("element".into(), Json::String(text));
        write_out(&Json::Object(map), out)?;
    }
    Ok(0)
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.cmd {
        Cmd::Bracket { x, y, out } => {
            let x = eval_algebra(&x)?;
            let y = eval_algebra(&y)?;
            emit_element(hvhom_core::bracket(&x, &y), &out)
        }
        Cmd::Hombracket { endo, x, y, out } => {
            let endo = Endomorphism::calibrated(endo.build()?, 6)?;
            let x = eval_algebra(&x)?;
            let y = eval_algebra(&y)?;
            emit_element(hom_bracket(&endo, &x, &y), &out)
        }
        Cmd::Endo { cmd } => match cmd {
            EndoCmd::Apply { endo, x, out } => {
                let endo = Endomorphism::calibrated(endo.build()?, 6)?;
                let x = eval_algebra(&x)?;
                emit_element(endo.apply(&x), &out)
            }
            EndoCmd::Calibrate { endo, window, out } => {
                let window = resolve_window(window).unwrap_or(8);
                let dc = calibrate_corrections(&endo.build()?, window)?;
                let mut map = serde_json::Map::new();
                for (i, name) in CORRECTION_NAMES.iter().enumerate() {
                    emit(format_args!("{name} = {}", dc.p(i + 1)))?;
                    map.insert((*name).to_string(), Json::String(dc.p(i + 1).to_string()));
                }
                write_out(&Json::Object(map), &out)?;
                Ok(0)
            }
        },
        Cmd::Act {
            family,
            printed_actions,
            x,
            vector,
            out,
        } => {
            let family = family.build()?;
            let sign = if printed_actions {
                Sign::Printed
            } else {
                Sign::Fixed
            };
            let x = eval_algebra(&x)?;
            let v = eval_module(&vector)?;
            emit_element(hvhom_core::act(&family, &x, &v, sign), &out)
        }
        Cmd::Homact {
            family,
            endo,
            norm,
            x,
            vector,
            out,
        } => {
            let spec = HomModuleSpec::new(family.build()?, endo.build()?, norm)?;
            let x = eval_algebra(&x)?;
            let v = eval_module(&vector)?;
            emit_element(spec.hom_act(&x, &v), &out)
        }
        Cmd::Admissible { family, endo, out } => {
            let family = family.build()?;
            let q = admissibility(&family, &endo.build()?)?;
            if matches!(family, Family::Abf { .. }) {
                emit(format_args!("q = {q}"))?;
            } else {
                emit("ok")?;
            }
            let mut map = serde_json::Map::new();
            map.insert("admissible".into(), Json::Bool(true));
            map.insert("q".into(), Json::from(q));
            write_out(&Json::Object(map), &out)?;
            Ok(0)
        }
        Cmd::SolveTwist {
            family,
            endo,
            window,
            out,
        } => {
            let window = resolve_window(window).unwrap_or(8);
            let solution = solve_twist_window(&family.build()?, &endo.build()?, window)?;
            emit(format_args!("dimension = {}", solution.dimension()))?;
            for (i, row) in solution.basis.iter().enumerate() {
                for ((t, j), value) in row {
                    emit(format_args!("basis[{i}]: a[{t},{j}] = {value}"))?;
                }
            }
            write_out(&solution.to_json(), &out)?;
            Ok(0)
        }
        Cmd::Check {
            suite,
            window,
            endo,
            family,
            alpha,
            beta,
            f,
            sign,
            printed_actions,
            norm,
            max_counterexamples,
            out,
        } => {
            let kind: SuiteKind = suite.parse()?;
            let mut config = SuiteConfig::new(kind);
            config.window = resolve_window(window);
            config.max_counterexamples = max_counterexamples;
            config.endo = Some(endo.build()?);
            if let Some(tag) = family {
                let args = FamilyArgs {
                    family: tag,
                    alpha,
                    beta,
                    f,
                };
                config.family = Some(args.build()?);
            }
            config.sign = match (sign.as_deref(), printed_actions) {
                (Some("+1"), _) | (None, true) => Sign::Printed,
                (Some("-1"), _) | (None, false) => Sign::Fixed,
                (Some(other), _) => {
                    return Err(CliError(format!(
                        "invalid --sign {other:?} (expected +1 or -1)"
                    )))
                }
            };
            config.norm = norm;
            let report = run_suite(&config)?;
            let code = print_report(&report, &out)?;
            eprintln!(
                "{}: {} ({} checked, {} failures)",
                report.suite,
                report.status.as_str(),
                report.checked,
                report.failures
            );
            Ok(code)
        }
        Cmd::Audit { cmd } => match cmd {
            AuditCmd::Thm22 {
                endo,
                window,
                max_counterexamples,
                out,
            } => {
                let window = resolve_window(window).unwrap_or(8);
                let report = audit_corrections(&endo.build()?, window, max_counterexamples)?;
                print_audit(&report, &out)
            }
            AuditCmd::Lemma28 {
                d,
                window,
                max_counterexamples,
                out,
            } => {
                let window = resolve_window(window).unwrap_or(8);
                let report = audit_shear(d, window, max_counterexamples)?;
                print_audit(&report, &out)
            }
            AuditCmd::Section3 {
                family,
                endo,
                norm,
                window,
                out,
            } => {
                let window = resolve_window(window).unwrap_or(5);
                let spec = HomModuleSpec::new(family.build()?, endo.build()?, norm)?;
                let report = spec.audit_closed_forms(window);
                print_audit(&report, &out)
            }
        },
        Cmd::Weight {
            family,
            endo,
            norm,
            out,
        } => {
            let spec = HomModuleSpec::new(family.build()?, endo.build()?, norm)?;
            emit(spec.is_weight_module())?;
            let mut map = serde_json::Map::new();
            map.insert("weight".into(), Json::Bool(spec.is_weight_module()));
            write_out(&Json::Object(map), &out)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(CliError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
