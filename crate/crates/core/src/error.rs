use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed rational `{0}`")]
    MalformedRational(String),

    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),

    #[error("duplicate abscissa {0} in interpolation data")]
    DuplicateAbscissa(i64),

    #[error("interpolation of degree {degree} needs {expected} points, got {got}")]
    PointCount {
        degree: usize,
        expected: usize,
        got: usize,
    },

    #[error("inequality or hyperplane has an all-zero normal")]
    ZeroNormal,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not a partial permutation matrix")]
    NotPartialPermutation,

    #[error("matrix is not a partial alternating sign matrix")]
    NotPasm,

    #[error("point lies outside the polytope")]
    OutsidePolytope,

    #[error("closed-form facet systems need m, n >= 2 (got {m}x{n})")]
    DegenerateSize { m: usize, n: usize },

    #[error("vertices span an affine space of dimension {got}, expected {expected}")]
    NotFullDimensional { expected: usize, got: usize },

    #[error("vertex {vertex} violates inequality {inequality}")]
    InconsistentInput { vertex: usize, inequality: usize },

    #[error("invalid weight vector: {0}")]
    InvalidWeights(String),

    #[error("invalid tube or tubing: {0}")]
    InvalidTubing(String),

    #[error("invalid chain: {0}")]
    InvalidChain(String),

    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    #[error("resource guard tripped: {states} states exceeds the cap of {cap}")]
    ResourceGuard { states: u128, cap: u128 },

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
