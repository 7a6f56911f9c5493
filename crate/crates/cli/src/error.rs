use std::io;

use foldcore::Error as CoreError;

/// Everything a command can fail with, mapped onto process exit codes.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("check failed: {0}")]
    CheckFailed(String),
    #[error("singular: {0}")]
    Singular(String),
    #[error("overflow: {0}")]
    Overflow(String),
    #[error("i/o: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Invalid(_) | CliError::Io(_) => 2,
            CliError::CheckFailed(_) => 3,
            CliError::Singular(_) => 4,
            CliError::Overflow(_) => 5,
        }
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        CliError::Invalid(msg.into())
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Singular { .. } => CliError::Singular(e.to_string()),
            CoreError::Overflow { .. } => CliError::Overflow(e.to_string()),
            CoreError::InvalidParam(_) | CoreError::DegenerateOrbit { .. } => {
                CliError::Invalid(e.to_string())
            }
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Invalid(format!("config: {e}"))
    }
}
