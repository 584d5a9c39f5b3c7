//! Experiment runner around `phasekit-core`: JSON descriptors for
//! families and arc sets, persisted run configurations, seeded input
//! batteries, and deterministic CSV/JSON reports with pass/fail
//! verdicts.
//!
//! The binary exposes one subcommand per experiment; this library
//! carries everything the binary does so that integration tests can
//! drive runs in-process.

pub mod battery;
pub mod config;
pub mod experiments;
pub mod json;
pub mod report;

pub use config::{ConfigPatch, ExperimentConfig, OutputFormat};
pub use experiments::{run_experiment, RunOutput};
pub use report::{write_reports, Cell, Table, Verdict};

use thiserror::Error;

/// Runner failure, split by exit code: bad configuration is the
/// caller's problem, a tripped numerical guard is a refusal to compute
/// something outside the validated regime.
#[derive(Debug, Error)]
pub enum RunError {
    /// Unknown experiment, unparsable or invalid family or arc set,
    /// malformed config file, unwritable output. Exit code 3.
    #[error("config error: {0}")]
    Config(String),
    /// Dimension, tail, grid, or truncation guard violated while the
    /// experiment ran. Exit code 4.
    #[error("numerical guard: {0}")]
    Guard(String),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) => 3,
            RunError::Guard(_) => 4,
        }
    }
}

impl From<phasekit_core::CoreError> for RunError {
    fn from(e: phasekit_core::CoreError) -> Self {
        RunError::Guard(e.to_string())
    }
}

impl From<std::io::Error> for RunError {
    fn from(e: std::io::Error) -> Self {
        RunError::Config(format!("io: {e}"))
    }
}
