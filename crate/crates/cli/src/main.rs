//! `nrank`: command-line front end for nrank-core.
//!
//! Exit codes: 0 ok, 1 usage, 2 parse, 3 resource or cap, 4 regression
//! mismatch.

mod commands;
mod config;
mod error;
mod output;
mod regression;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;

use commands::{CurveInput, PairInput, TraceInput};
use config::{Format, RunConfig};
use error::{CliError, EXIT_MISMATCH, EXIT_USAGE};
use output::Output;

#[derive(Parser, Debug)]
#[command(
    name = "nrank",
    version,
    about = "N-rank, r-order and eigenvalue dependence experiments"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalOpts {
    /// key=value configuration file, applied before the flags below.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Extra key=value setting; repeatable.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    set: Vec<String>,
    #[arg(long, global = true)]
    format: Option<Format>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    nmax: Option<u64>,
    #[arg(long, global = true)]
    precision: Option<u32>,
    #[arg(long, global = true)]
    max_precision: Option<u32>,
    /// Dependence search bound.
    #[arg(long, global = true)]
    bound: Option<u32>,
    #[arg(long, global = true)]
    modulus_budget: Option<u64>,
    #[arg(long, global = true)]
    degree_cap: Option<usize>,
    #[arg(long, global = true)]
    exhaustive_limit: Option<u64>,
    #[arg(long, global = true)]
    sampling_limit: Option<u64>,
}

#[derive(Args, Debug, Clone, Default)]
struct CurveArgs {
    /// Curve as p^k:a,b.
    #[arg(long)]
    curve: Option<String>,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<i64>,
}

impl From<CurveArgs> for CurveInput {
    fn from(c: CurveArgs) -> Self {
        CurveInput {
            spec: c.curve,
            p: c.p,
            k: c.k,
            a: c.a,
            b: c.b,
        }
    }
}

#[derive(Args, Debug, Clone, Default)]
struct PairArgs {
    #[command(flatten)]
    first: CurveArgs,
    /// Second curve as p^k:a,b.
    #[arg(long)]
    curve2: Option<String>,
    /// Coefficients of the second curve over the first curve's field.
    #[arg(long, allow_hyphen_values = true)]
    a2: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    b2: Option<i64>,
    /// Use the quadratic twist of the first curve as the second.
    #[arg(long)]
    twist: bool,
}

impl From<PairArgs> for PairInput {
    fn from(p: PairArgs) -> Self {
        PairInput {
            first: p.first.into(),
            spec2: p.curve2,
            a2: p.a2,
            b2: p.b2,
            twist: p.twist,
        }
    }
}

#[derive(Args, Debug, Clone, Copy, Default)]
struct FitArgs {
    /// First n of the slope fit; defaults to the middle of the series.
    #[arg(long)]
    fit_from: Option<u64>,
    /// Last n of the slope fit.
    #[arg(long)]
    fit_to: Option<u64>,
}

impl FitArgs {
    fn range(self) -> (Option<u64>, Option<u64>) {
        (self.fit_from, self.fit_to)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Spectral profile, verdict table and witnesses as JSON.
    Classify { matrix: PathBuf },
    /// N-rank for each modulus.
    Nrank {
        matrix: PathBuf,
        #[arg(long = "modulus", short = 'N', required = true)]
        moduli: Vec<BigInt>,
    },
    /// r-order modulo N; every r when --r is omitted.
    Ord {
        matrix: PathBuf,
        #[arg(long = "modulus", short = 'N', required = true)]
        moduli: Vec<u64>,
        #[arg(long)]
        r: Option<usize>,
    },
    /// gcd of the (r+1)-minors of A^n - I for n = 1..=nmax.
    Growth {
        matrix: PathBuf,
        #[arg(long)]
        r: usize,
        #[command(flatten)]
        fit: FitArgs,
    },
    /// Invariant order k(A, N) searched up to nmax.
    Kinv {
        matrix: PathBuf,
        #[arg(long = "modulus", short = 'N', required = true)]
        moduli: Vec<BigInt>,
    },
    /// gcd(lambda^n - 1, det C_{n,k}(eta)) for n = 1..=nmax.
    LemmaCheck {
        #[arg(long, allow_hyphen_values = true)]
        lambda: BigInt,
        #[arg(long, allow_hyphen_values = true)]
        eta: BigInt,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Growth along the multiples of the exceptional step.
    Witness {
        matrix: PathBuf,
        #[arg(long)]
        r: usize,
        #[command(flatten)]
        fit: FitArgs,
    },
    /// Group structure over F_{q^n}.
    EcStructure {
        #[command(flatten)]
        curve: CurveArgs,
        /// Extension degree; repeatable.
        #[arg(long = "n", default_value = "1")]
        degrees: Vec<u32>,
    },
    /// Exponent ratio log l / (n log q) for n = 1..=nmax.
    EcGrowth {
        #[command(flatten)]
        curve: CurveArgs,
    },
    /// gcd of the point counts of two curves for n = 1..=nmax.
    EcGcd {
        #[command(flatten)]
        pair: PairArgs,
        /// Trace of the first curve, bypassing point counting.
        #[arg(long, allow_hyphen_values = true)]
        t1: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        t2: Option<i64>,
        /// Field size for --t1 and --t2.
        #[arg(long)]
        q: Option<u64>,
        #[command(flatten)]
        fit: FitArgs,
    },
    /// Isogeny over the base field and over its extensions.
    EcIsogeny {
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Run the worked examples and slope checks; exit 4 on any mismatch.
    PaperRegression,
}

fn load_config(g: &GlobalOpts) -> Result<RunConfig, CliError> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &g.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::parse("config", format!("{}: {e}", path.display())))?;
        cfg.apply_text(&text)?;
    }
    for kv in &g.set {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| CliError::usage(format!("--set expects key=value, got {kv:?}")))?;
        cfg.set(k, v)?;
    }
    let overrides: [(&str, Option<String>); 10] = [
        ("format", g.format.map(|f| f.to_string())),
        ("seed", g.seed.map(|v| v.to_string())),
        ("n_max", g.nmax.map(|v| v.to_string())),
        ("precision", g.precision.map(|v| v.to_string())),
        ("max_precision", g.max_precision.map(|v| v.to_string())),
        ("bound", g.bound.map(|v| v.to_string())),
        ("modulus_budget", g.modulus_budget.map(|v| v.to_string())),
        ("degree_cap", g.degree_cap.map(|v| v.to_string())),
        ("exhaustive_limit", g.exhaustive_limit.map(|v| v.to_string())),
        ("sampling_limit", g.sampling_limit.map(|v| v.to_string())),
    ];
    for (k, v) in overrides {
        if let Some(v) = v {
            cfg.set(k, &v)?;
        }
    }
    cfg.validate()?;
    Ok(cfg)
}

/// Output plus whether it reports a regression mismatch.
fn run(cli: Cli) -> Result<(Output, Format, bool), CliError> {
    let cfg = load_config(&cli.global)?;
    let out = match cli.command {
        Command::Classify { matrix } => commands::classify(&matrix, &cfg)?,
        Command::Nrank { matrix, moduli } => commands::nrank(&matrix, &moduli)?,
        Command::Ord { matrix, moduli, r } => commands::ord(&matrix, &moduli, r, &cfg)?,
        Command::Growth { matrix, r, fit } => commands::growth(&matrix, r, fit.range(), &cfg)?,
        Command::Kinv { matrix, moduli } => commands::kinv(&matrix, &moduli, &cfg)?,
        Command::LemmaCheck { lambda, eta, k } => commands::lemma_check(&lambda, &eta, k, &cfg)?,
        Command::Witness { matrix, r, fit } => commands::witness(&matrix, r, fit.range(), &cfg)?,
        Command::EcStructure { curve, degrees } => commands::ec_structure(&curve.into(), &degrees, &cfg)?,
        Command::EcGrowth { curve } => commands::ec_growth(&curve.into(), &cfg)?,
        Command::EcGcd { pair, t1, t2, q, fit } => {
            commands::ec_gcd(&pair.into(), &TraceInput { t1, t2, q }, fit.range(), &cfg)?
        }
        Command::EcIsogeny { pair } => commands::ec_isogeny(&pair.into())?,
        Command::PaperRegression => {
            let checks = regression::run(&cfg);
            let failed = checks.iter().any(|c| !c.pass);
            return Ok((Output::Table(regression::table(&checks)), cfg.format, failed));
        }
    };
    Ok((out, cfg.format, false))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE as u8 } else { 0 });
        }
    };
    match run(cli) {
        Ok((out, format, failed)) => {
            let (stdout, stderr) = out.render(format);
            let _ = std::io::stdout().write_all(stdout.as_bytes());
            let _ = std::io::stderr().write_all(stderr.as_bytes());
            if failed {
                ExitCode::from(EXIT_MISMATCH as u8)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
