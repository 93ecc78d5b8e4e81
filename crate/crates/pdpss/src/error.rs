//! Error type shared by every fallible operation in the crate.

use std::fmt;

/// Errors produced by the builders, transforms and solvers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A precondition on the arguments was violated.
    InvalidArgument(String),
    /// An iterative kernel failed to converge or produced an unusable
    /// intermediate; the message names the failing stage.
    NumericalFailure(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::NumericalFailure(msg) => write!(f, "numerical failure: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

pub(crate) fn failure(msg: impl Into<String>) -> Error {
    Error::NumericalFailure(msg.into())
}
