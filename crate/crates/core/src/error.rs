use crate::graph::BondId;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("grid index {index} out of range for {len} points")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("singular soliton denominator at x = {x}, t = {t}")]
    SingularDenominator { x: f64, t: f64 },

    #[error("initial tail |q(0)| = {tail:.3e} at the vertex exceeds {tol:.1e}; increase the offset")]
    TailTooLarge { tail: f64, tol: f64 },

    #[error("non-finite value on bond {bond} at grid index {index}, t = {t}")]
    NonFinite { bond: BondId, index: usize, t: f64 },

    #[error("non-finite line value at grid index {index}, t = {t}")]
    LineNonFinite { index: usize, t: f64 },

    #[error("not enough records: {0}")]
    InsufficientRecords(String),
}
