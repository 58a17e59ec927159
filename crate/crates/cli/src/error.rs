//! Errors of the command-line front end and their exit codes.

use std::path::PathBuf;

/// Exit code of a run whose checks all passed.
pub const EXIT_PASS: i32 = 0;
/// Exit code of a run in which a scientific check failed.
pub const EXIT_SCIENTIFIC: i32 = 2;
/// Exit code for usage, configuration and output errors.
pub const EXIT_USAGE: i32 = 3;

/// Failures that stop a command before it can produce a report.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// The configuration file could not be read.
    #[error("cannot read config {path}: {source}")]
    ReadConfig {
        path: PathBuf,
        source: std::io::Error,
    },
    /// The configuration is not valid JSON for the command.
    #[error("invalid config: {0}")]
    ParseConfig(#[from] serde_json::Error),
    /// The configuration is well formed but its values are unusable.
    #[error("invalid config: {0}")]
    Config(String),
    /// Model parameters failed validation before the run.
    #[error("invalid model parameters: {0}")]
    Params(stripgibbs_core::Error),
    /// A computation failed while the experiment was running.
    #[error("computation failed: {0}")]
    Compute(#[from] stripgibbs_core::Error),
    /// Writing the outputs failed.
    #[error("cannot write output: {0}")]
    Output(String),
}

impl CliError {
    /// Process exit code for this error.
    ///
    /// Parameters outside a model's domain are configuration errors even when
    /// they surface during the run; every other computational failure is
    /// scientific.
    pub fn exit_code(&self) -> i32 {
        use stripgibbs_core::Error;
        match self {
            CliError::Compute(Error::ParamDomain(_) | Error::ShockRegion) => EXIT_USAGE,
            CliError::Compute(_) => EXIT_SCIENTIFIC,
            _ => EXIT_USAGE,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Output(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Output(e.to_string())
    }
}

/// Convenience alias.
pub type Result<T> = std::result::Result<T, CliError>;
