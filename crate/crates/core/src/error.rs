use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not an odd prime below 2^31")]
    BadPrime(u64),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("weight {0} is not dominant for {1}")]
    NotDominant(String, String),
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("point budget exceeded: {needed} points > budget {budget}")]
    Budget { needed: u128, budget: u128 },
    #[error("transitivity certificate unavailable: {0}")]
    NoTransitivity(String),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("all samples degenerate")]
    Degenerate,
    #[error("{0} is not in the Lie algebra")]
    NotInLieAlgebra(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
