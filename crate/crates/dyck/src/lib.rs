//! Nondeterministic Dyck walks: steps `{-1}`, `{1}`, `{-1,1}`.
//!
//! Closed-form generating functions via the kernel method, two-term
//! asymptotics, and the limit laws of the final maximum and of returns to zero.

mod asym;
mod fseries;
mod gf;
mod laws;
mod weights;

pub use asym::{asymptotic_eval, excursion_prob_asym, maxlaw_moments, ExcursionRegime};
pub use gf::{
    bridge_gf_series_unweighted, d00, kernel, meander_closed_form, meander_gf_series, unweighted_closed_forms, walk_series, x_root, y_root,
};
pub use laws::{
    d00_at, down_heavy_eta, down_heavy_first_form, maxlaw_discrete_pmf, maxlaw_reciprocal_variant, returns_pmf, MaxLaw,
    ReturnsCase,
};
pub use weights::{drift_vector, map_to_2d, minmax_polynomial, DriftVector, DyckWeights};

#[derive(Debug, thiserror::Error)]
pub enum DyckError {
    #[error("invalid weights: {0}")]
    Weights(String),
    #[error("regime: {0}")]
    Regime(String),
    #[error(transparent)]
    Series(#[from] nwalk_series::SeriesError),
}
