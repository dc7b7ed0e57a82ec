use crate::scalar::Backend;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("malformed number literal {0:?}")]
    MalformedLiteral(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("non-finite float {0:?}")]
    NonFinite(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("backend mismatch: expected {expected}, found {found}")]
    BackendMismatch { expected: Backend, found: Backend },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("points must have at least one coordinate")]
    EmptyPoint,
    #[error("points {0} and {1} coincide")]
    CoincidentPoints(usize, usize),
    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("dimension {0} is not supported (need 2 <= d <= {max})", max = crate::construct::MAX_DIM)]
    UnsupportedDimension(usize),
    #[error("point is not a vertex of the embedded hypercube")]
    NotAVertex,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("margin must be positive")]
    NonPositiveMargin,
    #[error("invalid tolerance: {0}")]
    InvalidTolerance(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("bad point-set file: {0}")]
    Format(String),
    #[error("construction failed: {0}")]
    ConstructionFailed(String),
}
