use std::fmt;
use std::str::FromStr;

use nwalk_sumset::IntSet;
use nwalk_walk::{classify_walk, ReachState};
use serde::{Deserialize, Serialize};

use crate::NetError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeCapability {
    Encap,
    Decap,
    Both,
    Passive,
}

impl NodeCapability {
    pub const ALL: [NodeCapability; 4] = [NodeCapability::Encap, NodeCapability::Decap, NodeCapability::Both, NodeCapability::Passive];

    pub fn nstep(self) -> IntSet {
        match self {
            NodeCapability::Encap => IntSet::singleton(1),
            NodeCapability::Decap => IntSet::singleton(-1),
            NodeCapability::Both => IntSet::new([-1, 1]),
            NodeCapability::Passive => IntSet::singleton(0),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            NodeCapability::Encap => "encap",
            NodeCapability::Decap => "decap",
            NodeCapability::Both => "both",
            NodeCapability::Passive => "passive",
        }
    }
}

impl fmt::Display for NodeCapability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NodeCapability {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let lower = s.trim().to_ascii_lowercase();
        NodeCapability::ALL.into_iter().find(|k| k.name() == lower).ok_or_else(|| s.to_string())
    }
}

/// Capabilities along a path, sender first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetworkPath {
    caps: Vec<NodeCapability>,
    nodes: Option<Vec<String>>,
}

impl NetworkPath {
    pub fn new(caps: Vec<NodeCapability>) -> Result<Self, NetError> {
        if caps.is_empty() {
            return Err(NetError::EmptyPath);
        }
        Ok(NetworkPath { caps, nodes: None })
    }

    pub fn with_nodes(caps: Vec<NodeCapability>, nodes: Vec<String>) -> Result<Self, NetError> {
        assert_eq!(caps.len(), nodes.len(), "one capability per node");
        let mut p = NetworkPath::new(caps)?;
        p.nodes = Some(nodes);
        Ok(p)
    }

    pub fn caps(&self) -> &[NodeCapability] {
        &self.caps
    }

    pub fn nodes(&self) -> Option<&[String]> {
        self.nodes.as_deref()
    }

    pub fn len(&self) -> usize {
        self.caps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

pub fn path_to_nsteps(path: &NetworkPath) -> Vec<IntSet> {
    path.caps.iter().map(|c| c.nstep()).collect()
}

pub fn feasibility_check(path: &NetworkPath) -> bool {
    classify_walk(&path_to_nsteps(path)).is_excursion
}

/// Header-stack change chosen at each node for one feasible schedule, if any.
///
/// Walks the floored reach sets backwards from 0, so every prefix stays at or
/// above 0 and the total is 0.
pub fn feasible_assignment(path: &NetworkPath) -> Option<Vec<i64>> {
    let walk = path_to_nsteps(path);
    let trace = ReachState::trace(&walk);
    if !trace.last()?.floored.contains(0) {
        return None;
    }
    let mut h = 0;
    let mut out = vec![0; walk.len()];
    for i in (0..walk.len()).rev() {
        let s = walk[i].iter().find(|s| trace[i].floored.contains(h - s)).expect("floored sets are closed backwards");
        out[i] = s;
        h -= s;
    }
    Some(out)
}
