//! Command-line front end: factor, verify, cofactor, annihilate, fourbar.
//!
//! Exit status 0 on success, 2 when a well-formed input has no answer of
//! the requested kind, 1 on input or format errors.

mod pretty;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use spinor_factor::annihilator::{annihilator, classify, Method, NullDisplacement};
use spinor_factor::cofactor::{find_cofactor, real_cofactor, DEFAULT_MAX_ATTEMPTS};
use spinor_factor::factor::{factorize_all, verify, FactorOptions, Status, VERIFY_TOL};
use spinor_factor::fourbar::{self, QuadricSystem};
use spinor_factor::{Error, EvenElement, EvenPolynomial, Factorization, Quaternion, Side};

#[derive(Parser)]
#[command(
    name = "spinor-factor",
    version,
    about = "Factorization of spinor polynomials in conformal geometric algebra"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Numerical tolerance
    #[arg(long, default_value_t = 1e-10, value_parser = positive)]
    tol: f64,
    /// Seed for every random choice
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Pretty,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Nullspace,
    Sandwich,
    Cases,
}

#[derive(Subcommand)]
enum Command {
    /// Factor a spinor polynomial {"coeffs": [...]}
    Factor {
        /// Input file; stdin when absent
        input: Option<PathBuf>,
        /// Try every ordering of the quadratic factors
        #[arg(long)]
        all: bool,
        #[arg(long, value_enum, default_value_t = SideArg::Left)]
        side: SideArg,
        #[command(flatten)]
        common: Common,
    },
    /// Re-expand {"polynomial": ..., "factorization": ...} and compare
    Verify {
        input: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Find a linear cofactor H and a real cofactor R
    Cofactor {
        input: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_MAX_ATTEMPTS)]
        max_attempts: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Left and right annihilating points of a null displacement
    Annihilate {
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = MethodArg::Nullspace)]
        method: MethodArg,
        #[command(flatten)]
        common: Common,
    },
    /// Axes of the built-in spherical four-bar example or of a given system
    Fourbar {
        /// Three symmetric 4x4 matrices, bare or as {"forms": [...]}
        #[arg(long, conflicts_with = "points")]
        system: Option<PathBuf>,
        /// Precomputed null points as a list of quaternions
        #[arg(long)]
        points: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("expected a positive number, got {s}")),
    }
}

/// Outcome of a subcommand: output value and whether it is a domain signal.
struct Outcome {
    value: Value,
    pretty: String,
    signal: bool,
}

enum Failure {
    Input(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_domain_signal() {
            Failure::Domain(e)
        } else {
            Failure::Input(e.to_string())
        }
    }
}

fn read_input(path: &Option<PathBuf>) -> Result<String, Failure> {
    let mut s = String::new();
    match path {
        Some(p) => {
            s = std::fs::read_to_string(p)
                .map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
        }
        None => {
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        }
    }
    Ok(s)
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::Input(format!("malformed input: {e}")))
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable output")
}

fn run_factor(
    input: &Option<PathBuf>,
    all: bool,
    side: SideArg,
    c: &Common,
) -> Result<Outcome, Failure> {
    let poly: EvenPolynomial = parse(&read_input(input)?)?;
    let opts = FactorOptions {
        all_orderings: all,
        side: match side {
            SideArg::Left => Side::Left,
            SideArg::Right => Side::Right,
        },
        seed: c.seed,
        tol: c.tol,
        ..FactorOptions::default()
    };
    let report = factorize_all(&poly, &opts)?;
    Ok(Outcome {
        pretty: pretty::report(&report),
        signal: report.status == Status::NoFactorization,
        value: to_value(&report),
    })
}

#[derive(Deserialize)]
struct VerifyInput {
    polynomial: EvenPolynomial,
    factorization: Factorization,
}

fn run_verify(input: &Option<PathBuf>) -> Result<Outcome, Failure> {
    let v: VerifyInput = parse(&read_input(input)?)?;
    let residual = verify(&v.polynomial, &v.factorization);
    let ok = residual <= VERIFY_TOL;
    Ok(Outcome {
        value: json!({ "residual": residual, "ok": ok }),
        pretty: format!(
            "residual {residual:.3e} ({})\n",
            if ok { "ok" } else { "mismatch" }
        ),
        signal: !ok,
    })
}

fn run_cofactor(
    input: &Option<PathBuf>,
    max_attempts: usize,
    c: &Common,
) -> Result<Outcome, Failure> {
    let poly: EvenPolynomial = parse(&read_input(input)?)?;
    let single = find_cofactor(&poly, c.seed, max_attempts)?;
    let real = real_cofactor(&poly, c.seed, max_attempts)?;
    let pretty = pretty::cofactor(&single, &real);
    Ok(Outcome {
        value: json!({ "cofactor": to_value(&single), "real_cofactor": to_value(&real) }),
        pretty,
        signal: false,
    })
}

fn run_annihilate(
    input: &Option<PathBuf>,
    method: MethodArg,
    c: &Common,
) -> Result<Outcome, Failure> {
    let n: EvenElement = parse(&read_input(input)?)?;
    let nd = NullDisplacement::new(n, 1e-8)?;
    let method = match method {
        MethodArg::Nullspace => Method::Nullspace,
        MethodArg::Sandwich => Method::Sandwich { seed: c.seed },
        MethodArg::Cases => Method::Cases { seed: c.seed },
    };
    let kernel_tol = c.tol.max(1e-8);
    let left = annihilator(&nd, Side::Left, method, kernel_tol)?;
    let right = annihilator(&nd, Side::Right, method, kernel_tol)?;
    let class = classify(&nd, kernel_tol)?;
    Ok(Outcome {
        pretty: pretty::annihilators(&left.basis, &right.basis, &class),
        value: json!({ "left": to_value(&left.basis), "right": to_value(&right.basis), "class": to_value(&class) }),
        signal: false,
    })
}

#[derive(Deserialize)]
#[serde(untagged)]
enum SystemInput {
    Wrapped { forms: [[[f64; 4]; 4]; 3] },
    Bare([[[f64; 4]; 4]; 3]),
}

fn run_fourbar(
    system: &Option<PathBuf>,
    points: &Option<PathBuf>,
    c: &Common,
) -> Result<Outcome, Failure> {
    let report = if let Some(p) = points {
        let pts: Vec<Quaternion> = parse(&read_input(&Some(p.clone()))?)?;
        fourbar::run_from_points(&pts)?
    } else {
        let sys = match system {
            Some(p) => {
                let forms = match parse::<SystemInput>(&read_input(&Some(p.clone()))?)? {
                    SystemInput::Wrapped { forms } | SystemInput::Bare(forms) => forms,
                };
                QuadricSystem::new(forms)?
            }
            None => QuadricSystem::reference(),
        };
        fourbar::run(&sys, c.seed, c.tol.max(fourbar::DEFAULT_TOL))?
    };
    Ok(Outcome {
        pretty: pretty::fourbar(&report),
        value: to_value(&report),
        signal: false,
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // usage errors are input errors; help and version succeed
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let (result, format) = match &cli.command {
        Command::Factor {
            input,
            all,
            side,
            common,
        } => (run_factor(input, *all, *side, common), common.format),
        Command::Verify { input, common } => (run_verify(input), common.format),
        Command::Cofactor {
            input,
            max_attempts,
            common,
        } => (run_cofactor(input, *max_attempts, common), common.format),
        Command::Annihilate {
            input,
            method,
            common,
        } => (run_annihilate(input, *method, common), common.format),
        Command::Fourbar {
            system,
            points,
            common,
        } => (run_fourbar(system, points, common), common.format),
    };
    match result {
        Ok(out) => {
            match format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&out.value).expect("json")
                ),
                Format::Pretty => print!("{}", out.pretty),
            }
            if out.signal {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(failure) => {
            let (msg, code, kind) = match failure {
                Failure::Input(m) => (m, 1, "input"),
                Failure::Domain(e) => (e.to_string(), 2, "domain"),
            };
            println!("{}", json!({ "error": msg, "kind": kind }));
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
