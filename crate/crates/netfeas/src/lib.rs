//! Feasibility of tunnelled network paths.
//!
//! A node that can only encapsulate adds one header level (`{1}`), one that
//! can only decapsulate removes one (`{-1}`), a node doing either is `{-1,1}`
//! and a passive relay is `{0}`. A path is feasible when some choice at every
//! node never pops an empty stack and ends with no extra header: exactly when
//! the N-walk is an N-excursion.

mod path;
mod rate;
mod topology;

pub use path::{feasibility_check, feasible_assignment, path_to_nsteps, NetworkPath, NodeCapability};
pub use rate::{random_feasibility_rate, FeasibilityRate, TheoryReference};
pub use topology::Topology;

#[derive(Debug, thiserror::Error)]
pub enum NetError {
    #[error("a path needs at least one node")]
    EmptyPath,
    #[error("line {line}: unknown capability {text:?} (expected encap, decap, both or passive)")]
    UnknownKind { line: usize, text: String },
    #[error("line {line}: expected two fields, got {text:?}")]
    BadLine { line: usize, text: String },
    #[error("node {0} is not in the topology")]
    UnknownNode(String),
    #[error("no link between {0} and {1}")]
    NotAdjacent(String, String),
    #[error("node {0} has no capability label")]
    NoCapability(String),
    #[error("kind distribution must not be empty")]
    EmptyDistribution,
    #[error(transparent)]
    Sim(#[from] nwalk_montecarlo::SimError),
    #[error(transparent)]
    Walk(#[from] nwalk_walk::WalkError),
}
