use thiserror::Error;

/// Errors raised by the engine. Resource limits are never silent.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("too many variables: {0} (at most {max})", max = crate::algebra::MAX_VARS)]
    TooManyVariables(usize),
    #[error("inhomogeneous input: {0}")]
    Inhomogeneous(String),
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("the defining ideal contains a unit")]
    UnitIdeal,
    #[error("operation undefined on the zero module: {0}")]
    ZeroModule(&'static str),
    #[error("module does not have finite length")]
    InfiniteLength,
    #[error("ring is not Cohen-Macaulay")]
    NotCohenMacaulay,
    #[error("reduction not found after {0} samples")]
    ReductionNotFound(usize),
    #[error("witness sampling failed: {0}")]
    WitnessFailed(String),
    #[error("inadmissible input: {0}")]
    Inadmissible(String),
    #[error("modules live over different rings")]
    RingMismatch,
}

pub type Result<T> = std::result::Result<T, Error>;
