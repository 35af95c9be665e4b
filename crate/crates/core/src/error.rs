use alloc::string::String;

/// Errors raised by the algebraic constructions and the linear algebra engine.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid shape: {0}")]
    InvalidShape(String),
    #[error("index {idx} out of range 1..={max}")]
    IndexOutOfRange { idx: usize, max: usize },
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("double index is not strict")]
    NotStrict,
    #[error("target is not in the orbit of the source")]
    NotInOrbit,
    #[error("dimension mismatch: expected {expected}x{expected}, found {rows}x{cols}")]
    DimensionMismatch { expected: usize, rows: usize, cols: usize },
    #[error("ambient dimension {dim} exceeds the size cap {cap}")]
    SizeCapExceeded { dim: usize, cap: usize },
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("layer {layer} out of range 0..={max}")]
    LayerOutOfRange { layer: usize, max: usize },
    #[error("invalid generator: {0}")]
    InvalidGenerator(String),
    #[error("malformed relation instance: {0}")]
    MalformedRelation(String),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
}

pub type Result<T> = core::result::Result<T, Error>;
