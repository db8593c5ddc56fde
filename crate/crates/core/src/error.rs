use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("no crossings")]
    NoCrossings,

    #[error("edge {0} appears {1} times (expected exactly 2)")]
    EdgeMultiplicity(i64, usize),

    #[error("dangling edge label {0}")]
    DanglingEdge(i64),

    #[error("face count {faces} violates the Euler check (expected {expected})")]
    NonPlanar { faces: usize, expected: usize },

    #[error("inconsistent strand orientation on component containing edge {0}")]
    InconsistentOrientation(i64),

    #[error("header declares {declared} components but the crossings define {found}")]
    ComponentCount { declared: usize, found: usize },

    #[error("orientation vector has length {got}, expected {expected}")]
    OrientationLength { got: usize, expected: usize },

    #[error("unknown crossing {0}")]
    UnknownCrossing(usize),

    #[error("empty component selection")]
    EmptySelection,

    #[error("component index {0} out of range")]
    UnknownComponent(usize),

    #[error("diagram is not connected")]
    Disconnected,

    #[error("bipartition must have both sides non-empty")]
    TrivialBipartition,

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("vectors are linearly dependent")]
    DependentVectors,

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("diagram has {crossings} crossings, above the cap of {cap}")]
    CrossingCap { crossings: usize, cap: usize },

    #[error("tangle endpoint mismatch: {0}")]
    EndpointMismatch(String),

    #[error("annular winding number is {0}, expected 0")]
    NonzeroWinding(i64),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
