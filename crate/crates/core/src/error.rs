use thiserror::Error;

/// Errors raised by the exact constructions in this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("not a signed permutation: {0}")]
    NotSignedPermutation(String),

    #[error("parameter out of range: {0}")]
    InvalidParameter(String),

    #[error("unsupported combination: {0}")]
    Unsupported(String),

    #[error("not a complex structure (need J^t = -J and J^2 = -Id)")]
    NotComplexStructure,

    #[error("first generator is not the block swap [[0,Id],[Id,0]]")]
    NotSwapForm,

    #[error("invalid Clifford representation: {0}")]
    InvalidRepresentation(String),

    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },

    #[error("ambient dimension {0} exceeds the supported maximum of 128")]
    AmbientTooLarge(usize),

    #[error("tau_k needs an even k, got {0}")]
    OddTauDegree(usize),

    #[error("point is not on the unit sphere")]
    NonUnitPoint,

    #[error("invalid JSON document: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
