//! Error type of the command-line harness and its exit-code mapping.

use thiserror::Error;

/// Failures that stop a run before all records are emitted.
#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed literal, flag, grid or configuration value.
    #[error("parse error: {0}")]
    Parse(String),

    /// Structurally invalid configuration, e.g. an unknown or missing key.
    #[error("configuration error: {0}")]
    Config(String),

    /// A numerical routine failed.
    #[error("numeric failure in {}: {source}", source.op())]
    Numeric {
        #[from]
        source: hyperwedge::Error,
    },

    /// Output could not be written.
    #[error("output error: {0}")]
    Output(String),
}

impl CliError {
    /// Process exit status: 2 for misuse, 3 for numeric breakdown.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Config(_) | CliError::Output(_) => 2,
            CliError::Numeric { .. } => 3,
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
