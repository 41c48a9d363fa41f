//! Error types shared by the computing engines and the CLI.

use thiserror::Error;

/// Failure of an invariant computation.
#[derive(Debug, Error)]
pub enum ComputeError {
    /// A parameter violates the domain of the requested invariant
    /// (for example a nonpositive degree).
    #[error("{0}")]
    InvalidParameter(String),

    /// The value depends on auxiliary constants that no engine, table entry,
    /// or oracle can supply.
    #[error("insufficient auxiliary data: missing {}", keys.join(", "))]
    MissingData { keys: Vec<String> },
}

impl ComputeError {
    pub fn invalid(msg: impl Into<String>) -> Self {
        ComputeError::InvalidParameter(msg.into())
    }

    pub fn missing(keys: Vec<String>) -> Self {
        ComputeError::MissingData { keys }
    }
}
