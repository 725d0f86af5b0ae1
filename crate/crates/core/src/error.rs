use thiserror::Error;

use crate::root_system::TypeLabel;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported root system {label}{rank}")]
    UnsupportedType { label: TypeLabel, rank: usize },

    #[error("unknown type label `{0}` (expected one of A, B, C, D, G2)")]
    UnknownLabel(String),

    #[error("index {index} out of range 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("dimension mismatch: expected rank {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("weight {0} is not dominant")]
    NonDominantWeight(String),

    #[error("minimum {min} of h_{index} is not an integer")]
    IntegralityViolation { index: usize, min: String },

    #[error("root operator {index} cuts across a factor boundary")]
    FactorBoundaryViolation { index: usize },

    #[error("crystal seed is not a highest-weight element (e_{0} does not vanish)")]
    NonHighestSeed(usize),

    #[error("unknown generator: {0}")]
    UnknownGenerator(String),

    #[error("budget of {0} exceeded")]
    BudgetExceeded(usize),

    #[error("letter {letter} out of range 1..={n}")]
    LetterOutOfRange { letter: usize, n: usize },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("malformed root-system data: {0}")]
    Data(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
