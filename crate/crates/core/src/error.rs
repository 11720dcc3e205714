use thiserror::Error;

use crate::specfun::SpecFunError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors produced by distribution, fitting and data-handling routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("no convergence after {iterations} iterations: {detail}")]
    NonConvergence { iterations: usize, detail: String },

    #[error("invalid data: {0}")]
    InvalidData(String),

    #[error("invalid data at line {line}: {detail}")]
    InvalidDataAt { line: usize, detail: String },

    #[error("parse error at line {line}: {detail}")]
    Parse { line: usize, detail: String },

    #[error("matrix is singular or not positive definite")]
    SingularMatrix,

    #[error("unknown dataset `{0}`")]
    UnknownDataset(String),

    #[error("unknown model family `{0}`")]
    UnknownFamily(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<SpecFunError> for Error {
    fn from(e: SpecFunError) -> Self {
        match e {
            SpecFunError::Domain(detail) => Error::Domain(detail),
            SpecFunError::NonConvergence { iterations, detail } => {
                Error::NonConvergence { iterations, detail }
            }
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
