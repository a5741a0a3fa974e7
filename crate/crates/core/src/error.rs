use thiserror::Error;

/// Errors raised by the algebra layer and the input formats.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("weight {0:?} is not weakly decreasing")]
    NotDominant(Vec<i64>),
    #[error("weight {0:?} has a negative entry; a partition was expected")]
    NegativeEntry(Vec<i64>),
    #[error("weight of length {len} does not fit GL({m})")]
    TooLong { len: usize, m: usize },
    #[error("invalid flag variety: {0}")]
    BadFlag(String),
    #[error("block {index} has length {found}, expected {expected}")]
    BlockShape { index: usize, expected: usize, found: usize },
    #[error("bundles live on different spaces: {0} vs {1}")]
    SpaceMismatch(String, String),
    #[error("unknown line-bundle generator {0:?} for {1}")]
    UnknownGenerator(String, String),
    #[error("filtered bundle has unsupported piece shape: {0}")]
    PieceShape(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown name {0:?}")]
    UnknownName(String),
}

pub type Result<T> = std::result::Result<T, Error>;
