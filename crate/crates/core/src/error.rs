use thiserror::Error;

/// Failures raised by the simulation and modeling routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A size or dimension contract was violated.
    #[error("size error: {0}")]
    Size(String),
    /// A qubit index fell outside the register.
    #[error("qubit index {index} out of range for a {n}-qubit register")]
    Index { index: usize, n: usize },
    #[error("invalid argument: {0}")]
    Argument(String),
    /// A value lies outside the mathematical domain of the model.
    #[error("domain error: {0}")]
    Domain(String),
}

impl Error {
    /// Short machine-readable tag for the error kind.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Size(_) => "size",
            Error::Index { .. } => "index",
            Error::Argument(_) => "argument",
            Error::Domain(_) => "domain",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
