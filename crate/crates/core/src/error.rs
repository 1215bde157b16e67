use thiserror::Error;

/// Errors produced anywhere in the engine.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("group order cap of {cap} exceeded")]
    GroupOrderCap { cap: usize },

    #[error("element set is not a union of double cosets ({leftover} elements left over)")]
    NotDoubleCosetUnion { leftover: usize },

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("element {0} lies outside the ambient group")]
    OutsideAmbient(String),

    #[error("unknown field node `{0}`")]
    UnknownNode(String),

    #[error("unknown 1-morphism label `{0}`")]
    UnknownLabel(String),

    #[error("not composable: target `{left_target}` differs from source `{right_source}`")]
    NotComposable {
        left_target: String,
        right_source: String,
    },

    #[error("system has not been closed")]
    NotClosed,

    #[error("system is not connected")]
    NotConnected,

    #[error("closure did not reach a fixed point within the cap of {cap} composita (inconclusive)")]
    ClosureCap { cap: usize },

    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("polynomial degree {degree} exceeds the cap of {cap}")]
    DegreeCap { degree: usize, cap: usize },

    #[error("polynomial is not monic and irreducible: {0}")]
    NotIrreducible(String),

    #[error("field embedding invariant violated: {0}")]
    BadEmbedding(String),

    #[error("algebra is not semisimple: radical dimension {0}")]
    NotSemisimple(usize),

    #[error("no primitive element found after {0} attempts")]
    PrimitiveElement(usize),

    #[error("unsupported realization: {0}")]
    UnsupportedRealization(String),

    #[error("realization check failed: {0}")]
    BadRealization(String),

    #[error("oracle mismatch: {0}")]
    OracleMismatch(String),

    #[error("repeated identity summand `{0}`")]
    RepeatedIdentity(String),

    #[error("empty object subset")]
    EmptySubset,

    #[error("internal inconsistency: {0}")]
    Internal(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
