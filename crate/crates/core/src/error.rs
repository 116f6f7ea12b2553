use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("functional {0:?} does not annihilate the weight vector")]
    NotInDualLattice(Vec<i64>),

    #[error("vector {0} is not the representative of a class of N")]
    NotInAlphaImage(String),

    #[error("the semigroup T needs at least two weights")]
    TooFewWeights,

    #[error("degree cap {cap} is below the dimension {dim}")]
    DegreeCapTooSmall { cap: String, dim: usize },

    #[error("quotient does not vanish in degree {degree} above the dimension {dim}")]
    NonVanishing { degree: String, dim: usize },

    #[error("zero-fibre Jacobian algebra differs from the deformed-ring quotient: {0}")]
    PathMismatch(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("{0}")]
    Precondition(String),

    #[error("format `{format}` is not supported for {what}")]
    UnsupportedFormat { format: String, what: &'static str },

    #[error("cannot parse `{0}` as a rational number")]
    ParseRational(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for failures of internal consistency checks, as opposed to bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::PathMismatch(_) | Error::NonVanishing { .. } | Error::Internal(_))
    }
}
