use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] polybase_core::Error),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed record: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// Process exit code: 2 for bad input, 3 for an exhausted cutoff.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(polybase_core::Error::Inconclusive { .. }) => 3,
            CliError::Core(polybase_core::Error::InvariantViolation(_)) => 1,
            CliError::Io(_) => 1,
            _ => 2,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
