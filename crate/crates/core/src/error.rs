use thiserror::Error;

use crate::exact::ExactError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("n = {n} is out of range (need n >= {min})")]
    InvalidN { n: usize, min: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// An internal cross-check failed. Always an implementation bug.
    #[error("consistency check failed: {0}")]
    Inconsistent(String),
    #[error("polynomiality methods disagree for n = {n}: {details}")]
    MethodDisagreement { n: usize, details: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn require_n(n: usize, min: usize) -> Result<()> {
    if n < min {
        Err(Error::InvalidN { n, min })
    } else {
        Ok(())
    }
}
