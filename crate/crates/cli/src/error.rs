use thiserror::Error;
use weqtk_core::Error as CoreError;

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("certificate format {found} is not {expected}")]
    VersionMismatch { found: String, expected: String },
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Core(#[from] CoreError),
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl CliError {
    /// Process exit code; verdicts use 0, 1 and 2.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Io(_) => 3,
            CliError::Core(CoreError::UnsupportedBackend(_)) => 4,
            CliError::Core(CoreError::SearchBudgetExceeded { .. }) => 5,
            CliError::VersionMismatch { .. } => 6,
            CliError::Core(_) => 7,
        }
    }
}
