//! Command-line front end for `qpentagon-core`.
//!
//! Exit codes: 0 when every check passes, 1 when a verification fails (the
//! first counterexample goes to standard error), 2 for usage, configuration,
//! compute-domain and I/O errors.

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;
use thiserror::Error;

pub mod commands;
pub mod config;
pub mod report;

pub use commands::execute;
pub use config::{Cli, CommandKind, Format, RunConfig};
pub use report::{Cell, Check, Report};

pub const EXIT_PASS: u8 = 0;
pub const EXIT_VERIFICATION_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("computation error: {0}")]
    Compute(#[from] qpentagon_core::Error),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

/// Render the report and send it to `--out` or standard output.
pub fn emit(report: &Report, cfg: &RunConfig) -> Result<(), CliError> {
    let text = report.render(cfg)?;
    match &cfg.out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

/// Parse, validate, run and report; returns the process exit code.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            };
        }
    };
    let outcome = RunConfig::from_cli(cli).and_then(|cfg| {
        let report = execute(&cfg)?;
        emit(&report, &cfg)?;
        Ok(report)
    });
    match outcome {
        Ok(report) => match report.first_failure() {
            None => EXIT_PASS,
            Some(c) => {
                eprintln!("verification failed: {}: {}", c.name, c.detail);
                EXIT_VERIFICATION_FAILED
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}
