//! Nondeterministic walks: each step is a finite set of integers, and the walk
//! tracks every endpoint a compatible classical walk could reach.

mod compressed;
mod dp;
mod oracle;
mod reach;
mod steps;

pub use compressed::{CompressedModel, ProgressionModel, StateKey};
pub use dp::{
    count_all, count_by_dp, final_max_distribution, for_each_layer, minmax_series, reach_sets_at, returns_distribution, Class,
    ClassCounts, Layer, LayerEntry, StateMode,
};
pub use oracle::{classical_count, enumerate_oracle, oracle_counts, DEFAULT_CAP};
pub use reach::{classify_walk, step_reach, ReachState, WalkClass};
pub use steps::{parse_walk, NStepSet};

#[derive(Debug, thiserror::Error)]
pub enum WalkError {
    #[error("N-steps must be nonempty")]
    EmptyStep,
    #[error("a step set needs at least one step")]
    NoSteps,
    #[error("negative weight {0}")]
    NegativeWeight(String),
    #[error("{steps} steps but {weights} weights")]
    WeightCount { steps: usize, weights: usize },
    #[error("{0}")]
    Parse(String),
    #[error(transparent)]
    Sumset(#[from] nwalk_sumset::SumsetError),
    #[error("enumeration needs {needed} step applications, above the cap of {cap}")]
    CapExceeded { needed: u64, cap: u64 },
    #[error("compressed model does not close over the step set: {0}")]
    NotClosed(String),
}
