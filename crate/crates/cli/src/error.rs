use std::io;
use std::path::PathBuf;

use thiserror::Error;

/// Failures mapped onto the exit-code contract: 2 for bad usage or input,
/// 3 for partial or undecided results, 4 for a violated invariant.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {message}")]
    Input { path: PathBuf, message: String },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("undecided: {0}")]
    Undecided(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Input { .. } | CliError::Io { .. } => 2,
            CliError::Undecided(_) => 3,
            CliError::Invariant(_) => 4,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }

    pub fn input(path: impl Into<PathBuf>, message: impl ToString) -> Self {
        CliError::Input { path: path.into(), message: message.to_string() }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Usage(format!("csv output: {e}"))
    }
}
