use thiserror::Error;

/// Errors raised by the geometry, mixed-volume and functional layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("unsupported dimension {0} (expected 2 or 3)")]
    UnsupportedDimension(usize),
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("expected {expected} bodies, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("scale factor must be positive, got {0}")]
    NonpositiveScale(f64),
    #[error("origin is not an interior point of {0}")]
    OriginNotInterior(String),
    #[error("halfspace intersection is empty or unbounded")]
    InfeasibleIntersection,
    #[error("direction count {got} below minimum {min}")]
    TooFewDirections { got: usize, min: usize },
    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("ill-conditioned polynomial fit: {0}")]
    IllConditionedFit(String),
    #[error("invalid Orlicz function: {0}")]
    PhiInvalid(String),
    #[error("measure has zero total mass")]
    ZeroMass,
    #[error("logarithm of nonpositive value {value} at atom {atom}")]
    LogOfNonpositive { atom: usize, value: f64 },
    #[error("negative support value {value} at atom {atom}")]
    NonpositiveSupport { atom: usize, value: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
}

pub type Result<T> = std::result::Result<T, GeomError>;
