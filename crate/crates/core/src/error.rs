use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("degree {degree} is outside the reliable window (max {max})")]
    OutsideWindow { degree: usize, max: usize },

    #[error("boundary composite d_{degree} d_{} is not zero", degree + 1)]
    NotAComplex { degree: usize },

    #[error("chain map does not commute with boundaries in degree {degree}")]
    NotAChainMap { degree: usize },

    #[error("identity {identity} fails in degree {degree}")]
    SemicyclicIdentity { identity: String, degree: usize },

    #[error("relation matrix of the target does not absorb the image of the source relations")]
    IllDefinedMap,

    #[error("cocycle condition fails: {0}")]
    Cocycle(String),

    #[error("hypothesis refused: {reason}; witness: {witness}")]
    Refused { reason: String, witness: String },
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn refused(reason: impl Into<String>, witness: impl Into<String>) -> Self {
        Error::Refused { reason: reason.into(), witness: witness.into() }
    }
}
