use thiserror::Error;

/// Errors raised by the rigorous evaluators, the certifier and the oracle.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by an interval containing zero")]
    DivisionByZeroInterval,
    #[error("interval endpoint left the finite binary64 range")]
    OverflowToNonFinite,
    #[error("non-finite input")]
    NonFiniteInput,
    #[error("invalid interval: lo {lo} > hi {hi}")]
    InvertedInterval { lo: f64, hi: f64 },
    #[error("root of an interval with a negative lower endpoint")]
    NegativeBase,
    #[error("outside supported domain: {0}")]
    DomainNotSupported(String),
    #[error("unsupported order: {0}")]
    UnsupportedOrder(String),
    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NonConvergence { iterations: usize, residual: f64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o failure: {0}")]
    IoFailure(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::IoFailure(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
