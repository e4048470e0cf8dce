use thiserror::Error;

/// Failures of a CLI run, split by exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags, invalid parameters or an unwritable output path (exit 2).
    #[error("usage error: {0}")]
    Usage(String),

    /// A numerical routine failed (exit 1).
    #[error("numerical failure: {0}")]
    Numerical(#[from] teardrop_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numerical(_) => 1,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Usage(msg.into()))
}

/// Parameter validation errors from the core are usage errors at this layer.
pub fn as_usage(e: teardrop_core::Error) -> CliError {
    CliError::Usage(e.to_string())
}
