use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid level k = {k}: {reason}")]
    InvalidLevel { k: i64, reason: &'static str },

    #[error("label ({i},{j}) is out of range at level {k}")]
    InvalidLabel { i: i64, j: i64, k: i64 },

    #[error("tilde label ({i},{l}) has i and l of different parity")]
    TildeParity { i: i64, l: i64 },

    #[error("level mismatch: {0} vs {1}")]
    LevelMismatch(u32, u32),

    #[error("{0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("lattice is not integral")]
    NotIntegral,

    #[error("lattice is not even")]
    NotEven,

    #[error("Gram matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("vectors do not lie in the lattice")]
    NotInLattice,

    #[error("sublattice does not have full rank")]
    NotFullRank,

    #[error("sublattice is not RSSD")]
    NotRssd,

    #[error("isometry has no finite order within {0} steps")]
    InfiniteOrder(usize),

    #[error("self-check failed: {0}")]
    SelfCheck(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
