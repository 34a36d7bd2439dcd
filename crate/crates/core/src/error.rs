use thiserror::Error;

/// Errors surfaced by the exact-arithmetic layer and the functors built on it.
#[derive(Debug, Error)]
pub enum Error {
    #[error("segment endpoints {0} and {1} do not differ by an integer")]
    NonIntegralDifference(String, String),

    #[error("operation requires a nonempty segment")]
    EmptySegment,

    #[error("weight coordinate {0} has non-integral multiplicity lambdaL - lambdaR")]
    NonIntegralWeight(usize),

    #[error("weight coordinate {0} has negative multiplicity lambdaL - lambdaR")]
    NegativeMu(usize),

    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("requested module dimension {dim} exceeds cap {cap}")]
    DimensionCap { dim: usize, cap: usize },

    #[error("subspace is not invariant under {0}")]
    InvarianceViolation(String),

    #[error("eigenvalue candidate set incomplete: accounted {found} of {dim} dimensions")]
    CandidateSetIncomplete { found: usize, dim: usize },

    #[error("module with m = 0 has no generators to restrict along")]
    NoGenerators,

    #[error("weight must have at least one coordinate")]
    EmptyWeight,

    #[error("lambdaL has {0} entries but lambdaR has {1}")]
    WeightShape(usize, usize),

    #[error("cannot parse scalar {0:?}")]
    ParseScalar(String),

    #[error("cannot parse segment {0:?}")]
    ParseSegment(String),

    #[error("cannot parse multisegment {0:?}")]
    ParseMultisegment(String),

    #[error("invalid module data: {0}")]
    ModuleData(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
