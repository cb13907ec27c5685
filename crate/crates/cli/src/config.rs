//! Command-line parsing and validation into a [`RunConfig`].

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qpentagon_core::limits::MAX_K;
use qpentagon_core::qnumeric::DEFAULT_TOL_TERM;

use crate::CliError;

/// Largest accepted pentagon truncation degree.
pub const MAX_DEGREE: usize = 40;
/// Largest accepted `m`/`n` bound for the coefficient identities.
pub const MAX_MN: usize = 60;

#[derive(Debug, Parser)]
#[command(
    name = "qpentagon",
    version,
    about = "Verify the quantum pentagon identity and its classical limit"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CommandKind,
    #[command(flatten)]
    pub options: Options,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Subcommand)]
pub enum CommandKind {
    /// Exact coefficient identities for all m <= max-m, n <= max-n.
    VerifyE7,
    /// The pentagon identity in the skew series ring, up to total degree `--degree`.
    VerifyPentagon,
    /// Evaluate the numeric quantities at (q, a, z, x).
    Eval,
    /// Check the sum/integral sandwich bounds at (q, a, z, x).
    Bounds,
    /// Scan q = 1 - 2^-k for k-min..=k-max and compare with the dilogarithm limit.
    LimitScan,
    /// Rogers five-term and reflection identities.
    Rogers,
    /// Run the full acceptance suite with default parameters.
    All,
}

impl CommandKind {
    pub fn name(self) -> &'static str {
        match self {
            CommandKind::VerifyE7 => "verify-e7",
            CommandKind::VerifyPentagon => "verify-pentagon",
            CommandKind::Eval => "eval",
            CommandKind::Bounds => "bounds",
            CommandKind::LimitScan => "limit-scan",
            CommandKind::Rogers => "rogers",
            CommandKind::All => "all",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Csv,
    Json,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Text => "text",
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Args)]
pub struct Options {
    /// Base q in (0, 1).
    #[arg(long, global = true, default_value_t = 0.9)]
    pub q: f64,
    /// Parameter a in (0, 1).
    #[arg(long, global = true, default_value_t = 0.5)]
    pub a: f64,
    /// Parameter z in (0, 1).
    #[arg(long, global = true, default_value_t = 0.5)]
    pub z: f64,
    /// Evaluation point in [0, 1).
    #[arg(long, global = true, default_value_t = 0.5)]
    pub x: f64,
    /// Truncation degree of the skew series.
    #[arg(long, global = true, default_value_t = 16)]
    pub degree: usize,
    #[arg(long, global = true, default_value_t = 20)]
    pub max_m: usize,
    #[arg(long, global = true, default_value_t = 20)]
    pub max_n: usize,
    #[arg(long, global = true, default_value_t = 4)]
    pub k_min: u32,
    #[arg(long, global = true, default_value_t = 14)]
    pub k_max: u32,
    /// Relative tolerance of the numeric comparisons.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol_rel: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

/// A validated run; every field is within the range the compute modules accept.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: CommandKind,
    pub q: f64,
    pub a: f64,
    pub z: f64,
    pub x: f64,
    pub degree: usize,
    pub max_m: usize,
    pub max_n: usize,
    pub k_min: u32,
    pub k_max: u32,
    pub tol_rel: f64,
    pub tol_term: f64,
    pub format: Format,
    pub out: Option<PathBuf>,
}

fn open_unit(name: &str, v: f64) -> Result<(), CliError> {
    if v > 0.0 && v < 1.0 {
        Ok(())
    } else {
        Err(CliError::Config(format!(
            "--{name} must lie in (0, 1), got {v}"
        )))
    }
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, CliError> {
        let o = cli.options;
        open_unit("q", o.q)?;
        open_unit("a", o.a)?;
        open_unit("z", o.z)?;
        if !(0.0..1.0).contains(&o.x) {
            return Err(CliError::Config(format!(
                "--x must lie in [0, 1), got {}",
                o.x
            )));
        }
        if o.degree > MAX_DEGREE {
            return Err(CliError::Config(format!(
                "--degree must be at most {MAX_DEGREE}, got {}",
                o.degree
            )));
        }
        for (name, v) in [("max-m", o.max_m), ("max-n", o.max_n)] {
            if v > MAX_MN {
                return Err(CliError::Config(format!(
                    "--{name} must be at most {MAX_MN}, got {v}"
                )));
            }
        }
        for (name, k) in [("k-min", o.k_min), ("k-max", o.k_max)] {
            if !(1..=MAX_K).contains(&k) {
                return Err(CliError::Config(format!(
                    "--{name} must lie in 1..={MAX_K}, got {k}"
                )));
            }
        }
        if o.k_min > o.k_max {
            return Err(CliError::Config(format!(
                "--k-min ({}) exceeds --k-max ({})",
                o.k_min, o.k_max
            )));
        }
        if !(o.tol_rel > 0.0 && o.tol_rel < 1.0) {
            return Err(CliError::Config(format!(
                "--tol-rel must lie in (0, 1), got {}",
                o.tol_rel
            )));
        }
        Ok(Self {
            command: cli.command,
            q: o.q,
            a: o.a,
            z: o.z,
            x: o.x,
            degree: o.degree,
            max_m: o.max_m,
            max_n: o.max_n,
            k_min: o.k_min,
            k_max: o.k_max,
            tol_rel: o.tol_rel,
            tol_term: DEFAULT_TOL_TERM,
            format: o.format,
            out: o.out,
        })
    }
}
