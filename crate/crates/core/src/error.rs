use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("index m = {m} out of range for n = {n} (need 0 <= m <= n)")]
    MOutOfRange { n: u64, m: u64 },

    #[error("binomial({a}, {b}) requires b <= a")]
    BinomialOutOfRange { a: String, b: u64 },

    #[error("invalid board: {0}")]
    InvalidBoard(String),

    #[error("invalid placement: {0}")]
    InvalidPlacement(String),

    #[error("parameters out of range: {0}")]
    OutOfRange(String),

    #[error("rounding budget exceeded: interval width {width:e} > allowed {allowed:e}")]
    PrecisionBudget { width: f64, allowed: f64 },

    #[error("root finder failed: {0}")]
    RootFinding(String),

    #[error("invalid simulation config: {0}")]
    InvalidConfig(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
