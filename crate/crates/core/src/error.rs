use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("rank {0} is out of range: a nonabelian free group needs 2 <= rank <= 26")]
    InvalidRank(usize),

    #[error("{message} at position {position}")]
    Parse { position: usize, message: String },

    #[error("alphabet mismatch: rank {left} vs rank {right}")]
    AlphabetMismatch { left: usize, right: usize },

    #[error("operation requires a deterministic automaton")]
    NotDeterministic,

    #[error("language has zero density, so it admits no cover certificate")]
    ZeroDensity,

    #[error("subgroup has infinite index")]
    InfiniteIndex,

    #[error("the subshift is empty")]
    EmptyShift,

    #[error("the shift graph is not irreducible")]
    Reducible,

    #[error("power iteration did not converge after {iterations} iterations; last bracket [{low}, {high}]")]
    NoConvergence { iterations: usize, low: f64, high: f64 },

    #[error("first shift is not contained in the second: {witness} is allowed by the first only")]
    InclusionViolated { witness: String },

    #[error("rank {0} exceeds the orbit enumeration limit of 3")]
    RankTooLarge(usize),

    #[error("bound {bound} is smaller than the cyclic length {length}")]
    BoundTooSmall { bound: usize, length: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse { position, message: message.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
