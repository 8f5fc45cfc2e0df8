//! `qcorr` command-line front end.
//!
//! Every subcommand renders its whole output into a string before anything
//! is written, so a run either produces a complete table/report or a usage
//! error. Exit codes: 0 success, 1 a scientific check failed, 2 usage error,
//! 3 optimizer did not converge.

pub mod boxes;
pub mod chsh;
pub mod identity;
pub mod interference;
pub mod output;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "qcorr",
    version,
    about = "Interference terms, CHSH correlations and the Tsirelson-bound identity"
)]
pub struct Cli {
    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sorkin interference terms I2..I5 on random configurations or a phase sweep.
    Interference(interference::Args),
    /// CHSH values: deterministic strategies, seesaw optimization, random-scenario scan.
    Chsh(chsh::Args),
    /// Sum-of-squares identity (exact) and the operator inequality (numeric).
    Identity(identity::Args),
    /// No-signaling behavior tables: PR box, local boxes, mixtures, files.
    Boxes(boxes::Args),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    CheckFailed,
    NoConvergence,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::CheckFailed => 1,
            Status::NoConvergence => 3,
        }
    }
}

/// Rendered output of a successful run, plus its verdict.
#[derive(Debug)]
pub struct Outcome {
    pub body: String,
    pub status: Status,
    /// One-line summary for standard error.
    pub summary: Option<String>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] qcorr_core::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(
                qcorr_core::Error::InvalidBehavior(_) | qcorr_core::Error::InvalidArgument(_),
            ) => 2,
            CliError::Core(_) | CliError::Io(_) => 1,
        }
    }
}

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Interference(a) => interference::run(a),
        Command::Chsh(a) => chsh::run(a),
        Command::Identity(a) => identity::run(a),
        Command::Boxes(a) => boxes::run(a),
    }
}
