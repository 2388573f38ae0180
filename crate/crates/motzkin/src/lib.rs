//! Nondeterministic Motzkin walks: all seven nonempty subsets of `{-1, 0, 1}`.
//!
//! Reach sets are intervals (type I) or step-2 progressions (type II); the
//! generating functions split accordingly.

mod asym;
mod meanders;
mod types;
mod walks;

pub use asym::{gamma, motzkin_asymptotics};
pub use meanders::{
    closed_form_checks, eval_at, excursion_quartic, kernel_entry, kernel_roots_x, kernel_roots_y, meander_closed_form,
    meander_series, meander_vector_series, transition_matrices, ClosedFormReport, Matrix2, TransitionMatrices,
};
pub use types::{motzkin_meander_type, motzkin_type, shape_type, MotzkinType};
pub use walks::{bridge_series_by_extraction, walk_series_by_type, WalkSeriesByType};

#[derive(Debug, thiserror::Error)]
pub enum MotzkinError {
    #[error("not a Motzkin step: {0}")]
    NotMotzkinStep(String),
    #[error(transparent)]
    Series(#[from] nwalk_series::SeriesError),
    #[error(transparent)]
    Walk(#[from] nwalk_walk::WalkError),
}
