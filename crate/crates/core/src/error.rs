use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("series has zero constant term")]
    ZeroConstantTerm,

    #[error("constant term must be 1, found {0}")]
    ConstantTermNotOne(String),

    #[error("graph is not chordal")]
    NotChordal,

    #[error("matrix is not upper triangular with unit diagonal")]
    NotUnitUpperTriangular,

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("insufficient data: {equations} equations for {unknowns} unknowns (need at least {required})")]
    InsufficientData {
        equations: usize,
        unknowns: usize,
        required: usize,
    },

    #[error("lattice has a vanishing coefficient at {0:?}")]
    VanishingCoefficient(Vec<u32>),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
