//! Reach-set types for arbitrary N-step sets: inference, the type automaton
//! for walks and meanders, its transition-matrix export, and bridge counting
//! from the extremes of reach sets.

mod automaton;
mod bridges;
mod core;
mod export;
mod infer;

pub use automaton::{build_automaton, BoundaryTransition, Transition, TypeAutomaton, TypeState};
pub use bridges::{bridge_series_from_automaton, state_series};
pub use core::{Move, Variant};
pub use export::{export_transition_system, Matrices, StateEntry, StepEntry, TransitionSystem};
pub use infer::{infer_types, Caps, InferenceFailure};

#[derive(Debug, thiserror::Error)]
pub enum TypelabError {
    #[error("caps must be positive")]
    BadCaps,
    #[error("type inference failed: {0}")]
    Inference(InferenceFailure),
    #[error("type {ty} is not closed under step {step}: witness {witness}")]
    NotClosed { ty: String, step: String, witness: String },
    #[error("type {ty} does not own its member {witness}")]
    Ambiguous { ty: String, witness: String },
    #[error("type {0} is not proper")]
    NotProper(String),
    #[error("walk automaton has a cycle through states {0:?}")]
    Cyclic(Vec<usize>),
    #[error("this operation needs a walk automaton")]
    WrongVariant,
    #[error("no transition for state {state} at min {min}, max {max} under step {step}")]
    OpenCell { state: usize, min: i64, max: i64, step: String },
    #[error("step {0} is not in the step set")]
    UnknownStep(String),
    #[error("bad transition document: {0}")]
    Json(String),
}
