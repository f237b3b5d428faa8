use thiserror::Error;

use crate::lp::LpError;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("point {point:?} lies outside the box [-{radius}, {radius}]^{dim}")]
    OutsideBox {
        point: Vec<i64>,
        radius: i64,
        dim: usize,
    },

    #[error("size guard exceeded: {requested} points requested, limit is {limit}")]
    SizeGuard { requested: String, limit: u64 },

    #[error("invalid function: {0}")]
    InvalidFunction(String),

    #[error("function is not integer valued on its box")]
    NotIntegerValued,

    #[error("operation not supported for {0}")]
    UnsupportedClass(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Lp(#[from] LpError),

    #[error("internal fault: {0}")]
    Internal(String),
}
