//! Finite integer sets under Minkowski sum, with the pruning operators and
//! periodic set families ("types") used to describe reachable-point sets.

mod frobenius;
mod intset;
mod types;

pub use frobenius::frobenius_number;
pub use intset::{IntSet, PackedSet};
pub use types::{detect_type, fit_with_period, SumsetType, TypeFit};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SumsetError {
    #[error("cannot parse integer set from {0:?}")]
    Parse(String),
    #[error("invalid type: {0}")]
    InvalidType(String),
    #[error("index {j} is below the type threshold {k}")]
    IndexBelowThreshold { j: i64, k: i64 },
    #[error("frobenius number undefined: {0}")]
    Frobenius(String),
}
