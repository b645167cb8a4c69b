use thiserror::Error;

/// Errors reported by graph construction, parsing, and the analysis routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range: graph has {order} vertices")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("self-loops are not allowed (vertex {vertex})")]
    SelfLoop { vertex: usize },

    #[error("edge list parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("edge {u}-{v} is not present")]
    MissingEdge { u: usize, v: usize },

    #[error("vertex identification must be injective on both sides")]
    NonInjectiveIdentification,

    #[error("expected {expected} vertices, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("support of size {size} exceeds the subset enumeration cap {cap}")]
    CapExceeded { size: usize, cap: usize },

    #[error("graph of order {order} exceeds the cap {cap} for exhaustive fort search")]
    OrderCap { order: usize, cap: usize },

    #[error("{0} is not a fort")]
    NotAFort(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("coefficient targets do not match the exposed degree set: missing {missing:?}, unexpected {extra:?}")]
    TargetMismatch {
        missing: Vec<usize>,
        extra: Vec<usize>,
    },

    #[error("required path length {needed} for degree {degree} exceeds the cap {cap}")]
    PathLengthCap {
        degree: usize,
        needed: String,
        cap: u64,
    },

    #[error("placement multiplicities must be at least 1 (vertex {vertex})")]
    ZeroMultiplicity { vertex: usize },

    #[error("probability {0} is outside [0, 1]")]
    ProbabilityRange(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
