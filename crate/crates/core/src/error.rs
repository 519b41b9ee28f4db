use thiserror::Error;

/// Errors surfaced by every fallible operation in the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Invalid arguments (bad vertex ids, overlapping sets, non-prime orders).
    #[error("argument error: {0}")]
    Argument(String),

    /// A documented precondition of an operation does not hold.
    #[error("contract error: {0}")]
    Contract(String),

    /// An oracle search was asked to exceed its budget.
    #[error("budget error: {0}")]
    Budget(String),

    /// Malformed edge-list or block file.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),

    /// Should be unreachable; signals a broken internal invariant.
    #[error("internal error: {0}")]
    Internal(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn argument<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Argument(msg.into()))
}

pub(crate) fn contract<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Contract(msg.into()))
}
