use thiserror::Error;

use crate::root_data::{Parabolic, Weight};

#[derive(Debug, Error)]
pub enum Error {
    #[error("rank mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("weight {0} is not integral")]
    NotIntegral(Weight),

    #[error("index {index} out of range for rank {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("invalid composition: {0}")]
    InvalidComposition(String),

    #[error("weight {weight} is not dominant for the Levi of {parabolic}")]
    NotParabolicDominant {
        weight: Weight,
        parabolic: Parabolic,
    },

    #[error("no finite expansion within depth {depth}")]
    NonTerminating { depth: usize },

    #[error("character mixes several bases")]
    MixedBasis,

    #[error("operation needs a standard or costandard basis")]
    SimpleBasis,

    #[error("expected a character in the {expected} basis")]
    WrongBasis { expected: String },

    #[error("weight {weight} is not weakly typical for {parabolic}")]
    NotWeaklyTypical {
        weight: Weight,
        parabolic: Parabolic,
    },

    #[error("no table entry for {weight} at {parabolic}")]
    NoTableEntry {
        weight: Weight,
        parabolic: Parabolic,
    },

    #[error("table entries disagree at {0}")]
    InconsistentTables(Weight),

    #[error("cross-check failed: {0}")]
    CrossCheck(String),

    #[error("parameter constraint violated: {0}")]
    ConstraintViolation(String),

    #[error("only rank {expected} is supported here, got {got}")]
    UnsupportedRank { expected: usize, got: usize },

    #[error("malformed fact: {0}")]
    MalformedFact(String),

    #[error("fixture error: {0}")]
    Fixture(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
