//! Seeded simulation of weighted N-walks.
//!
//! Run `r` draws its steps from ChaCha8 (a stream cipher PRNG with a 64-bit
//! stream selector) seeded from the 64-bit `seed` and switched to stream `r`. Runs are independent
//! substreams, so results do not depend on thread count or scheduling.

mod sampler;
mod sim;

pub use sampler::{BitStream, StepSampler};
pub use sim::{
    estimate_class_probability, sample_walk, sample_walk_run, statistic_histograms, tv_distance, Estimate, Histogram,
    SampledWalk, SimConfig, Statistic,
};

#[derive(Debug, thiserror::Error)]
pub enum SimError {
    #[error("weights must sum to exactly 1, got {0}")]
    NotNormalized(String),
    #[error("weight {0} is negative")]
    NegativeWeight(String),
    #[error("runs must be at least 1")]
    NoRuns,
    #[error("common denominator of the weights does not fit in 64 bits")]
    Denominator,
    #[error("no accepted samples out of {runs} runs")]
    NoAccepted { runs: u64 },
    #[error(transparent)]
    Walk(#[from] nwalk_walk::WalkError),
}
