use thiserror::Error;

/// Errors produced by the analysis library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("loop edge ({0}, {0}) is not allowed in a simple graph")]
    LoopEdge(usize),
    #[error("vertex index {index} out of range for a graph on {n} vertices")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("graph is not a tree")]
    NotATree,
    #[error("permutation has length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("images do not form a bijection of 0..{0}")]
    NotABijection(usize),
    #[error("automorphism search exceeded the node budget of {budget}")]
    SizeLimitExceeded { budget: u64 },
    #[error("zero pattern is not symmetric at ({0}, {1})")]
    AsymmetricPattern(usize, usize),
    #[error("copy count must be positive")]
    NonPositiveCount,
    #[error("K1 factor cannot be grown preserving its quantum automorphism group")]
    K1Input,
    #[error("input graph {0} is disconnected")]
    Disconnected(usize),
    #[error("empty input list")]
    EmptyInput,
    #[error("construction hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("unknown gallery graph `{0}`")]
    UnknownName(String),
    #[error("bad parameters for `{name}`: {reason}")]
    BadParams { name: String, reason: String },
    #[error("{what} = {value} outside the supported range {min}..={max}")]
    OutOfRange {
        what: &'static str,
        value: usize,
        min: usize,
        max: usize,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
