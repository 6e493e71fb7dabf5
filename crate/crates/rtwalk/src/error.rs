use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// The restriction vector admits no permutation at all.
    #[error("empty state space: {0}")]
    EmptyStateSpace(String),

    /// A configurable resource cap would be exceeded.
    #[error("cap exceeded: {what} needs {needed}, cap is {cap}")]
    CapExceeded {
        what: String,
        needed: String,
        cap: u64,
    },

    /// Caller-supplied parameters are out of range or malformed.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An operation that is only defined for two-step restriction vectors
    /// was called on something else.
    #[error("not a two-step restriction vector: {0}")]
    NotTwoStep(String),

    /// Two independent formulas for the same quantity disagreed; this
    /// signals a bug, never a user error.
    #[error("internal inconsistency: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code convention: 2 usage error, 3 resource cap,
    /// 1 anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::CapExceeded { .. } => 3,
            Error::InvalidInput(_) | Error::NotTwoStep(_) | Error::EmptyStateSpace(_) => 2,
            _ => 1,
        }
    }
}
