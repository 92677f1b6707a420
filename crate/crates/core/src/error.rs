use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("dimension mismatch: m = {left} vs m = {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("invalid dimension m = {0} (supported: 1..={max})", max = crate::MAX_M)]
    InvalidDimension(usize),

    #[error("m = {m} exceeds the limit {limit} for {what}")]
    LimitExceeded { what: &'static str, m: usize, limit: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("vertex set {0:?} is not independent")]
    NotIndependent(Vec<usize>),
}

pub type Result<T> = std::result::Result<T, Error>;
