//! Command-line front end: single-scenario runs, (N, d, nu) sweeps,
//! cross-verification mode, and machine-readable output.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use qudit_bell::report::{
    all_passed, render, render_verify, run, verify, ClassicalMethod, OutputFormat, QuantumMethod,
    RunConfig, VerifyOptions,
};
use qudit_bell::{Error, Rational};

/// Thread-count override honored when --threads is absent.
const THREADS_ENV: &str = "QUDIT_BELL_THREADS";
/// Verification-only negative-control hook (radians added to the half-step
/// phase); leave unset outside of tests.
const CORRUPT_OMEGA_ENV: &str = "QUDIT_BELL_CORRUPT_OMEGA";

#[derive(Parser)]
#[command(
    name = "qudit-bell",
    version,
    about = "Bell inequalities for N-partite d-dimensional systems: quantum \
             expectations, classical bounds, and violation ratios",
    after_help = "Examples:\n  \
        qudit-bell --parties 3 --dim 4 --classical both --quantum eigen\n  \
        qudit-bell --parties 2 --dim 2 --variant 1/4\n  \
        qudit-bell --parties 3 --dim 2..8 --format csv --out sweep.csv\n  \
        qudit-bell --verify"
)]
struct Cli {
    /// Party counts: a value (3), comma list (2,3,4), or inclusive range (2..5)
    #[arg(long, value_name = "LIST")]
    parties: Option<String>,

    /// Local dimensions, same syntax as --parties
    #[arg(long, value_name = "LIST")]
    dim: Option<String>,

    /// Variant phase as an exact rational "p/q" or integer; repeatable.
    /// Decimals are rejected. Default 0 (the generic inequality)
    #[arg(long = "variant", value_name = "P/Q")]
    variant: Vec<String>,

    /// How to obtain the classical bound
    #[arg(long, value_enum, default_value_t = ClassicalArg::Both)]
    classical: ClassicalArg,

    /// How to obtain the quantum number(s)
    #[arg(long, value_enum, default_value_t = QuantumArg::State)]
    quantum: QuantumArg,

    /// Strategies to draw in sample mode
    #[arg(long, default_value_t = 100_000)]
    samples: u64,

    /// Seed of the deterministic sampling stream
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Worker threads (default: all cores; env QUDIT_BELL_THREADS overrides)
    #[arg(long)]
    threads: Option<usize>,

    /// Exhaustive-enumeration cap override (default 100000000)
    #[arg(long, value_name = "COUNT")]
    max_strategies: Option<u64>,

    /// Maximize |B| instead of B (brute/sample modes only)
    #[arg(long)]
    two_sided: bool,

    /// Output format
    #[arg(long, value_enum, default_value_t = FormatArg::Table)]
    format: FormatArg,

    /// Write output here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Include per-scenario wall-clock timings (off by default so identical
    /// configurations render byte-identical reports)
    #[arg(long)]
    timings: bool,

    /// Run the cross-check suite over the configured ranges instead of a
    /// sweep; exits nonzero on any failed check
    #[arg(long)]
    verify: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassicalArg {
    Brute,
    Closed,
    Sample,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum QuantumArg {
    State,
    Eigen,
    Bound,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Table,
    Json,
    Csv,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::EnumerationLimit { .. } => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode, Error> {
    let threads = match cli.threads {
        Some(t) => Some(t),
        None => env_threads()?,
    };

    if cli.verify {
        let defaults = VerifyOptions::default();
        let opts = VerifyOptions {
            parties: match &cli.parties {
                Some(spec) => parse_usize_list(spec)?,
                None => defaults.parties,
            },
            dims: match &cli.dim {
                Some(spec) => parse_usize_list(spec)?,
                None => defaults.dims,
            },
            nus: if cli.variant.is_empty() {
                defaults.nus
            } else {
                parse_rationals(&cli.variant)?
            },
            omega_half_step_perturbation: env_corrupt_omega()?,
        };
        let checks = verify(&opts)?;
        print!("{}", render_verify(&checks));
        return Ok(if all_passed(&checks) {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(4)
        });
    }

    let config = RunConfig {
        parties: parse_usize_list(cli.parties.as_deref().unwrap_or("3"))?,
        dims: parse_usize_list(cli.dim.as_deref().unwrap_or("2"))?,
        nus: if cli.variant.is_empty() {
            vec![Rational::from_integer(0)]
        } else {
            parse_rationals(&cli.variant)?
        },
        classical: match cli.classical {
            ClassicalArg::Brute => ClassicalMethod::Brute,
            ClassicalArg::Closed => ClassicalMethod::Closed,
            ClassicalArg::Sample => ClassicalMethod::Sample,
            ClassicalArg::Both => ClassicalMethod::Both,
        },
        quantum: match cli.quantum {
            QuantumArg::State => QuantumMethod::State,
            QuantumArg::Eigen => QuantumMethod::Eigen,
            QuantumArg::Bound => QuantumMethod::Bound,
        },
        samples: cli.samples,
        seed: cli.seed,
        threads,
        enumeration_cap: cli.max_strategies,
        two_sided: cli.two_sided,
        timings: cli.timings,
    };

    let rows = run(&config)?;
    let format = match cli.format {
        FormatArg::Table => OutputFormat::Table,
        FormatArg::Json => OutputFormat::Json,
        FormatArg::Csv => OutputFormat::Csv,
    };
    let rendered = render(&rows, format);
    match &cli.out {
        Some(path) => std::fs::write(path, rendered)?,
        None => print!("{rendered}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn env_threads() -> Result<Option<usize>, Error> {
    match std::env::var(THREADS_ENV) {
        Ok(raw) => raw
            .trim()
            .parse::<usize>()
            .map(Some)
            .map_err(|_| Error::InvalidConfig {
                reason: format!("{THREADS_ENV}={raw:?} is not a thread count"),
            }),
        Err(_) => Ok(None),
    }
}

fn env_corrupt_omega() -> Result<f64, Error> {
    match std::env::var(CORRUPT_OMEGA_ENV) {
        Ok(raw) => raw.trim().parse::<f64>().map_err(|_| Error::InvalidConfig {
            reason: format!("{CORRUPT_OMEGA_ENV}={raw:?} is not a number"),
        }),
        Err(_) => Ok(0.0),
    }
}

/// "3" | "2,3,4" | "2..5" | "2-5" (both range forms inclusive).
fn parse_usize_list(spec: &str) -> Result<Vec<usize>, Error> {
    let bad = |reason: String| Error::InvalidConfig { reason };
    let spec = spec.trim();
    if spec.is_empty() {
        return Err(bad("empty list".into()));
    }
    let mut out = Vec::new();
    for part in spec.split(',') {
        let part = part.trim();
        let range = part
            .split_once("..")
            .or_else(|| part.split_once('-'));
        match range {
            Some((lo, hi)) => {
                let lo: usize = lo.trim().parse().map_err(|_| {
                    bad(format!("invalid range start in {part:?}"))
                })?;
                let hi: usize = hi.trim().parse().map_err(|_| {
                    bad(format!("invalid range end in {part:?}"))
                })?;
                if lo > hi {
                    return Err(bad(format!("empty range {part:?}")));
                }
                out.extend(lo..=hi);
            }
            None => out.push(
                part.parse()
                    .map_err(|_| bad(format!("invalid integer {part:?}")))?,
            ),
        }
    }
    Ok(out)
}

fn parse_rationals(specs: &[String]) -> Result<Vec<Rational>, Error> {
    specs.iter().map(|s| parse_rational(s)).collect()
}

/// Exact rational "p/q" or integer "p"; decimal input is rejected so nu is
/// never silently approximated.
fn parse_rational(spec: &str) -> Result<Rational, Error> {
    let bad = |reason: &str| Error::BadRational {
        input: spec.to_string(),
        reason: reason.to_string(),
    };
    let spec_trim = spec.trim();
    if spec_trim.contains('.') {
        return Err(bad("decimals are not accepted; write an exact rational like 1/4"));
    }
    match spec_trim.split_once('/') {
        Some((num, den)) => {
            let num: i64 = num.trim().parse().map_err(|_| bad("invalid numerator"))?;
            let den: i64 = den.trim().parse().map_err(|_| bad("invalid denominator"))?;
            if den == 0 {
                return Err(bad("denominator must be nonzero"));
            }
            Ok(Rational::new(num, den))
        }
        None => {
            let num: i64 = spec_trim.parse().map_err(|_| bad("invalid integer"))?;
            Ok(Rational::from_integer(num))
        }
    }
}
