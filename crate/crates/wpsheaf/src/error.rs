use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WppError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("insufficient window: {0}")]
    InsufficientWindow(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, WppError>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(WppError::InvalidInput(msg.into()))
}

pub(crate) fn internal<T>(msg: impl Into<String>) -> Result<T> {
    Err(WppError::Internal(msg.into()))
}
