use thiserror::Error;

pub type Result<T> = std::result::Result<T, CubeError>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CubeError {
    #[error("dimension {0} out of range (expected 1..={max})", max = crate::cube::MAX_DIM)]
    DimOutOfRange(u32),

    #[error("node {node} out of range for a cube with {count} nodes")]
    NodeOutOfRange { node: u32, count: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("Q_{0} has odd degree and admits no Eulerian orientation")]
    NotEulerian(u32),

    #[error("infeasible at this size: {0}")]
    Infeasible(String),

    #[error("serialized orientation has {actual} bytes, expected {expected}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("malformed orientation file: {0}")]
    Parse(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}

impl CubeError {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        CubeError::InvalidInput(msg.into())
    }

    pub(crate) fn infeasible(msg: impl Into<String>) -> Self {
        CubeError::Infeasible(msg.into())
    }
}
