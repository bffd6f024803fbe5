use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime in [2, 2^31)")]
    NotPrime(u64),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("subspace containment violated: {0}")]
    ContainmentViolation(String),

    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("ideal is not zero-dimensional: no pure power of `{0}` is a leading term")]
    NotZeroDimensional(String),

    #[error("quotient is not local: {0}")]
    NotLocal(String),

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("invalid map: {0}")]
    InvalidMap(String),

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("objects live over different algebras")]
    AlgebraMismatch,

    #[error("not free over the base: {0}")]
    NotFree(String),

    #[error("degree {degree} exceeds the computed bound {bound}")]
    BoundExceeded { degree: i32, bound: i32 },

    #[error("component in degree {0} is not a direct sum of copies of the dualizing module")]
    NotInjective(i32),

    #[error("hypothesis failed: Ext^{degree} does not vanish")]
    HypothesisFailed { degree: usize },

    #[error("invalid bound: {0}")]
    InvalidBound(String),

    #[error("table restriction violated: {0}")]
    RestrictionViolated(String),

    #[error("polynomial degree {0} exceeds the supported range")]
    DegreeTooLarge(usize),

    #[error("denominator constant term is not a unit")]
    NotInvertible,

    #[error("algebra is not selfinjective")]
    NotSelfinjective,

    #[error("maximal ideal cube is nonzero (Loewy length {0})")]
    LoewyTooLarge(usize),

    #[error("generator retries exhausted: {0}")]
    RetryExhausted(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io { context: context.into(), source }
    }
}
