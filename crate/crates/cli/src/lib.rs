//! `opz`: moments, zeros, mass-location sweeps and mollifier convergence
//! studies from the command line.

pub mod config;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num::BigRational;
use opz_core::lab::{
    check_gammas, check_grid, dyadic_gammas, markov_criterion_sweep, mollifier_convergence,
    sweep_mass_location, uniform_grid, LabOptions, SweepResult, Verdict, DEFAULT_STRICTNESS_MARGIN,
};
use opz_core::report;
use opz_core::scalar::parse_rational;
use opz_core::{measure_zeros, Arithmetic, EngineConfig, PerturbedMeasure};
use thiserror::Error;

use crate::config::MeasureFile;

pub const THREADS_ENV: &str = "OPZ_THREADS";
pub const DEFAULT_GRID: &str = "-3/2:3/2:1/20";
pub const DEFAULT_GAMMA_COUNT: u32 = 10;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] opz_core::Error),

    #[error("{0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },

    #[error("{0}")]
    Usage(String),
}

#[derive(Debug, Parser)]
#[command(name = "opz", version, about = "Zeros of orthogonal polynomials under moving point masses")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Moments m_0 … m_2n of the measure.
    Moments {
        #[command(flatten)]
        common: Common,
    },
    /// Zeros of p_n.
    Zeros {
        #[command(flatten)]
        common: Common,
    },
    /// Move the designated mass across a grid and certify that every zero
    /// increases. Exit 0 increasing, 1 violated, 2 inconclusive.
    Sweep {
        #[command(flatten)]
        common: Common,
        /// `lo:hi:step` or a comma-separated list.
        #[arg(long, default_value = DEFAULT_GRID, allow_hyphen_values = true)]
        grid: String,
        /// Minimum float-mode increase counted as strict.
        #[arg(long, default_value_t = DEFAULT_STRICTNESS_MARGIN)]
        margin: f64,
        /// Replace the moving mass by M·N(x; a, γ) at this width.
        #[arg(long, allow_hyphen_values = true)]
        gamma: Option<String>,
        /// Judge a precomputed `a,x1,…,xn` table instead of computing one.
        #[arg(long, hide = true)]
        trajectories: Option<PathBuf>,
    },
    /// Zeros of the mollified measure against the point-mass zeros as γ
    /// shrinks.
    Mollify {
        #[command(flatten)]
        common: Common,
        /// Strictly decreasing widths; defaults to 2^-1, …, 2^-10.
        #[arg(long, allow_hyphen_values = true)]
        gammas: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Float,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Measure file (JSON). Defaults to Legendre + unit mass at 0.
    #[arg(long)]
    pub measure: Option<PathBuf>,
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    /// Overrides the arithmetic of the measure file.
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    /// Float mantissa bits: 53 or 106.
    #[arg(long)]
    pub precision: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Print the effective measure file and exit.
    #[arg(long)]
    pub dump_config: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Done,
    Sweep(Verdict),
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Done | Outcome::Sweep(Verdict::StrictlyIncreasing) => 0,
            Outcome::Sweep(Verdict::Violated { .. }) => 1,
            Outcome::Sweep(Verdict::Inconclusive { .. }) => 2,
        }
    }
}

pub const ERROR_EXIT: i32 = 3;

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn load_measure(common: &Common) -> Result<PerturbedMeasure, CliError> {
    let file = match &common.measure {
        Some(path) => MeasureFile::from_json(&read(path)?)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?,
        None => MeasureFile::default_config(),
    };
    let measure = file.build()?;
    let arithmetic = match (common.mode, common.precision) {
        (Some(ModeArg::Exact), Some(_)) => {
            return Err(CliError::Usage("--precision applies only to float mode".into()))
        }
        (Some(ModeArg::Exact), None) => Arithmetic::ExactRational,
        (Some(ModeArg::Float), bits) => Arithmetic::Float(bits.unwrap_or(106)),
        (None, Some(bits)) => {
            if measure.arithmetic().is_exact() {
                return Err(CliError::Usage("--precision applies only to float mode".into()));
            }
            Arithmetic::Float(bits)
        }
        (None, None) => return Ok(measure),
    };
    Ok(measure.with_arithmetic(arithmetic.validate()?)?)
}

pub fn parse_grid(spec: &str) -> Result<Vec<BigRational>, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    let grid = match parts.as_slice() {
        [lo, hi, step] => uniform_grid(&parse_rational(lo)?, &parse_rational(hi)?, &parse_rational(step)?)?,
        [list] => list.split(',').map(parse_rational).collect::<Result<Vec<_>, _>>()?,
        _ => return Err(CliError::Usage(format!("--grid expects lo:hi:step or a list, got {spec:?}"))),
    };
    check_grid(&grid)?;
    Ok(grid)
}

pub fn parse_gammas(spec: Option<&str>) -> Result<Vec<BigRational>, CliError> {
    let gammas = match spec {
        None => dyadic_gammas(DEFAULT_GAMMA_COUNT),
        Some(s) => s.split(',').map(parse_rational).collect::<Result<Vec<_>, _>>()?,
    };
    check_gammas(&gammas)?;
    Ok(gammas)
}

/// `OPZ_THREADS`, when set, must be a positive integer.
pub fn threads_from_env() -> Result<Option<usize>, CliError> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(t) if t > 0 => Ok(Some(t)),
            _ => Err(CliError::Usage(format!("{THREADS_ENV} must be a positive integer, got {v:?}"))),
        },
    }
}

/// The moving mass (or the only mass) as (a, M); other atoms are rejected.
fn single_mass(m: &PerturbedMeasure) -> Result<(BigRational, BigRational), CliError> {
    let only = match (m.moving_mass(), m.fixed_masses()) {
        (Some(p), []) => p,
        (None, [p]) => p,
        _ => {
            return Err(CliError::Config(
                "field \"masses\": mollifier runs take exactly one mass on the base weight".into(),
            ))
        }
    };
    Ok((only.location().clone(), only.mass().clone()))
}

fn emit(common: &Common, text: &str) -> Result<(), CliError> {
    match &common.out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => {
            let mut stdout = io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}

fn json_text(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

fn options(margin: f64) -> Result<LabOptions, CliError> {
    if !(margin >= 0.0) || !margin.is_finite() {
        return Err(CliError::Usage(format!("--margin must be a finite non-negative number, got {margin}")));
    }
    Ok(LabOptions {
        engine: EngineConfig::default(),
        strictness_margin: margin,
        threads: threads_from_env()?,
    })
}

fn sweep_text(common: &Common, s: &SweepResult) -> String {
    match common.format {
        Format::Csv => report::sweep_csv(s),
        Format::Json => json_text(&report::sweep_json(s)),
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let common = match &cli.command {
        Command::Moments { common } | Command::Zeros { common } | Command::Mollify { common, .. } => common,
        Command::Sweep { common, .. } => common,
    };
    let measure = load_measure(common)?;
    if common.dump_config {
        emit(common, &MeasureFile::from_measure(&measure).to_json())?;
        return Ok(Outcome::Done);
    }
    let n = common.n;

    match &cli.command {
        Command::Moments { .. } => {
            let values = report::moment_strings(&measure, 2 * n + 1)?;
            let text = match common.format {
                Format::Csv => report::moments_csv(&values),
                Format::Json => json_text(&report::moments_json(&measure.description(), &values)),
            };
            emit(common, &text)?;
            Ok(Outcome::Done)
        }
        Command::Zeros { .. } => {
            let z = measure_zeros(&measure, n, &EngineConfig::default())?;
            let text = match common.format {
                Format::Csv => report::zeros_csv(&z),
                Format::Json => json_text(&report::zeros_json(&z)),
            };
            emit(common, &text)?;
            Ok(Outcome::Done)
        }
        Command::Sweep {
            grid,
            margin,
            gamma,
            trajectories,
            ..
        } => {
            let opts = options(*margin)?;
            let result = if let Some(path) = trajectories {
                let (a_grid, rows) = report::parse_sweep_csv(&read(path)?)?;
                SweepResult::from_trajectories(path.display().to_string(), a_grid, rows, None, opts.strictness_margin)?
            } else {
                let grid = parse_grid(grid)?;
                match gamma {
                    None => sweep_mass_location(&measure, &grid, n, &opts)?,
                    Some(g) => {
                        let (_, mass) = single_mass(&measure)?;
                        markov_criterion_sweep(measure.base(), &mass, &parse_rational(g)?, &grid, n, &opts)?
                    }
                }
            };
            emit(common, &sweep_text(common, &result))?;
            Ok(Outcome::Sweep(result.verdict))
        }
        Command::Mollify { gammas, .. } => {
            let gammas = parse_gammas(gammas.as_deref())?;
            let (a, mass) = single_mass(&measure)?;
            let table = mollifier_convergence(measure.base(), &mass, &a, &gammas, n, &options(DEFAULT_STRICTNESS_MARGIN)?)?;
            let text = match common.format {
                Format::Csv => report::convergence_csv(&table),
                Format::Json => json_text(&report::convergence_json(&table)),
            };
            emit(common, &text)?;
            Ok(Outcome::Done)
        }
    }
}
