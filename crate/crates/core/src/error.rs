use std::io;

use thiserror::Error;

/// Errors produced anywhere in the discovery pipeline.
#[derive(Debug, Error)]
pub enum Error {
    /// A numeric parameter violates a precondition (window length, alphabet size, thread count...).
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// Input data failed validation.
    #[error("invalid input: {0}")]
    Validation(String),

    /// A value could not be parsed; `location` names the csv line or the f64le byte offset.
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    /// No subsequence has a non-self match, so no discord exists.
    #[error("infeasible input: {0}")]
    Infeasible(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parameter(_) | Error::Infeasible(_) => 2,
            Error::Validation(_) | Error::Parse { .. } | Error::Io(_) => 3,
        }
    }

    /// Short remediation hint shown after the error message.
    pub fn hint(&self) -> Option<&'static str> {
        match self {
            Error::Parameter(_) => Some("check --n, --word-len, --alphabet, --vec-width and --threads"),
            Error::Infeasible(_) => {
                Some("the series needs at least 2 * n points; try a smaller --n")
            }
            Error::Validation(_) => Some("the input must hold at least one finite value"),
            Error::Parse { .. } => Some("csv input is one number per line with an optional header; f64le is raw little-endian doubles"),
            Error::Io(_) => None,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
