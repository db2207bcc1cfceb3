use std::io;
use std::path::PathBuf;

use qlattice::SimError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: {message}")]
    Validation { line: usize, message: String },

    #[error("{}:{line}: {message}", path.display())]
    File {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("invalid input spec: {0}")]
    Input(String),

    #[error(transparent)]
    Sim(#[from] SimError),
}

impl CliError {
    pub fn parse(line: usize, message: impl Into<String>) -> Self {
        CliError::Parse {
            line,
            message: message.into(),
        }
    }

    pub fn validation(line: usize, message: impl Into<String>) -> Self {
        CliError::Validation {
            line,
            message: message.into(),
        }
    }

    /// Attributes a failure in a referenced file to the circuit line naming it.
    pub(crate) fn at_line(self, line: usize) -> Self {
        CliError::Validation {
            line,
            message: self.to_string(),
        }
    }
}
