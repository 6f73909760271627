use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("tolerance exceeded: {0}")]
    Tolerance(String),
    #[error(transparent)]
    Core(#[from] polqpdf::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
    #[error("malformed CSV: {0}")]
    Csv(String),
}

impl CliError {
    /// Process exit status: 2 tolerance, 3 truncation, 4 validation, 1 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Tolerance(_) => 2,
            CliError::Core(polqpdf::Error::Truncation { .. }) => 3,
            CliError::Core(_) | CliError::Usage(_) => 4,
            CliError::Io { .. } | CliError::Csv(_) => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
