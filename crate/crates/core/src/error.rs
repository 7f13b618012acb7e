use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("not a root of unity")]
    NotRootOfUnity,
    #[error("order: {0}")]
    Order(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("search space of {size} candidates exceeds budget {budget}")]
    Budget { size: u128, budget: u128 },
    #[error("unknown {kind} '{name}'")]
    Unknown { kind: &'static str, name: String },
    #[error("inconsistent commutation data: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
