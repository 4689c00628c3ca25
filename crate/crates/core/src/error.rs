use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("degree must be positive")]
    EmptyDegree,

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("group order {order} exceeds the enumeration cap {cap}")]
    EnumerationCap { order: u128, cap: usize },

    #[error("{tuples} argument tuples exceed the tuple cap {cap}")]
    TupleCap { tuples: u128, cap: u128 },

    #[error("element {0} is not in the group")]
    NotInGroup(String),

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("group is not abelian")]
    NotAbelian,

    #[error("subgroups have different parents")]
    ParentMismatch,

    #[error("word needs {needed} arguments, got {got}")]
    TooFewArguments { needed: usize, got: usize },

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("unknown group: {0}")]
    UnknownGroup(String),

    #[error("bound exceeded: {0}")]
    BoundExceeded(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
