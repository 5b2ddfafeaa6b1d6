use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("time index {step} outside 1..={n}")]
    TimeOutOfRange { step: usize, n: usize },

    #[error("policy accepted at step {step} with no inventory left")]
    ContractViolation { step: usize },

    #[error("degenerate instance: {0}")]
    DegenerateInstance(String),

    #[error("solver failure: {0}")]
    Solver(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
