use thiserror::Error;

/// Errors produced by arrangement analyses.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("hyperplane index {index} out of range for an arrangement of {len} hyperplanes")]
    InvalidIndex { index: usize, len: usize },

    #[error("index set is not a flat of the arrangement")]
    NotAFlat,

    #[error("flat is not modular")]
    NotModular,

    #[error("arrangement is not essential (rank {rank} < dimension {dim})")]
    NotEssential { rank: usize, dim: usize },

    #[error("arrangement is not simplicial")]
    NotSimplicial,

    #[error("chamber does not belong to this arrangement")]
    ForeignChamber,

    #[error("not a partition of the arrangement: {0}")]
    NotAPartition(String),

    #[error("partition is not a factorization: {0}")]
    NotAFactorization(String),

    #[error("restriction map is not bijective")]
    RestrictionNotBijective,

    #[error("unknown builtin arrangement `{0}`")]
    UnknownBuiltin(String),

    #[error("invalid parameters for builtin `{name}`: {message}")]
    InvalidParams { name: String, message: String },

    #[error("{what} exceeds the configured cap of {limit}")]
    CapExceeded { what: String, limit: usize },

    /// A computed value contradicts a theorem; this indicates a bug.
    #[error("invariant violation: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit status: 1 usage, 2 input, 3 broken invariant, 4 cap.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::Parse { .. }
            | Error::DimensionMismatch { .. }
            | Error::UnknownBuiltin(_)
            | Error::InvalidParams { .. } => 2,
            Error::Invariant(_) => 3,
            Error::CapExceeded { .. } => 4,
            _ => 1,
        }
    }
}
