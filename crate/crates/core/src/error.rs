use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("ambient dimensions differ ({left} vs {right})")]
    AmbientMismatch { left: usize, right: usize },
    #[error("matrix shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("subspace is not contained in the given superspace")]
    NotContained,
    #[error("division by zero")]
    DivisionByZero,
    #[error("operation is undefined on the zero element")]
    ZeroElement,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("determinant {0} is not a unit of k[t, t^-1]")]
    NotInvertibleInLaurentRing(String),
    #[error("insufficient precision: {required} coefficients required, {available} available")]
    InsufficientPrecision { required: usize, available: usize },
    #[error("objects live on different Tate spaces")]
    SpaceMismatch,
    #[error("lattices are not nested")]
    NotNested,
    #[error("chain contains an identity automorphism")]
    DegenerateChain,
    #[error("chain of length {len} exceeds the cap {cap}")]
    ChainTooLong { len: usize, cap: usize },
    #[error("face {0} is not stored in the family")]
    UnknownFace(String),
    #[error("extension elements use different grading modes")]
    ModeMismatch,
    #[error("automorphism is not multiplication by a Laurent series")]
    NotMultiplicationAutomorphism,
    #[error("frame does not match the diagram's poset")]
    FrameMismatch,
    #[error("invalid poset: {0}")]
    InvalidPoset(String),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
