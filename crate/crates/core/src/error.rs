use thiserror::Error;

/// Errors raised by the computational core.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("empty polyhedron")]
    EmptyPolyhedron,
    #[error("not a facet")]
    NotAFacet,
    #[error("matrix is singular")]
    Singular,
    #[error("vectors are linearly dependent")]
    LinearlyDependent,
    #[error("weight scale must be positive")]
    NonPositiveScale,
    #[error("vector does not lie in the span of the cell")]
    NotInSpan,
    #[error("lower hull needs at least two finite points")]
    TooFewPoints,
    #[error("indices must be strictly increasing")]
    UnsortedIndices,
    #[error("unbounded polyhedron where a bounded one is required")]
    Unbounded,
    #[error("wrong bidegree: expected ({0}, {1}), found ({2}, {3})")]
    WrongBidegree(usize, usize, usize, usize),
    #[error("coordinate mismatch between forms")]
    CoordinateMismatch,
    #[error("affine map does not send the source cell into the target cell")]
    MapNotIntoTarget,
    #[error("point lies outside the support")]
    OutsideSupport,
    #[error("function not comparable to the linear structure on a face")]
    NotComparable,
    #[error("unsupported coefficient shape: {0}")]
    UnsupportedCoefficientShape(String),
    #[error("no generic displacement found after {0} attempts")]
    NonGenericDisplacement(usize),
    #[error("stable intersection depends on the displacement")]
    DisplacementDisagreement,
    #[error("map is not flat")]
    NotFlat,
    #[error("divisor not degree-0")]
    DivisorNotDegreeZero,
    #[error("graph is not connected")]
    Disconnected,
    #[error("unsupported on infinite edges")]
    InfiniteEdge,
    #[error("invalid series: {0}")]
    InvalidSeries(String),
    #[error("first-quadrant support is unbounded along {0:?}")]
    UnboundedSupport(Vec<String>),
    #[error("carrier cell {0} has no weight")]
    MissingWeight(usize),
    #[error("complex is not subordinate to the function")]
    NotSubordinate,
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
