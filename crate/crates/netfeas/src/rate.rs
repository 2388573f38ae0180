use std::collections::BTreeMap;

use num_traits::Zero;
use nwalk_dyck::{excursion_prob_asym, DyckWeights, ExcursionRegime};
use nwalk_montecarlo::{estimate_class_probability, SimConfig};
use nwalk_series::Q;
use nwalk_walk::{Class, NStepSet};
use serde::Serialize;

use crate::{NetError, NodeCapability};

/// Asymptotic feasibility probability when no node is passive.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoryReference {
    pub regime: String,
    /// Leading-order probability at this path length (0 at odd lengths).
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FeasibilityRate {
    pub estimate: f64,
    pub stderr: f64,
    pub runs: u64,
    pub theory: Option<TheoryReference>,
}

fn regime_name(r: ExcursionRegime) -> &'static str {
    match r {
        ExcursionRegime::Constant => "constant",
        ExcursionRegime::HalfDecay => "n^-1/2 decay",
        ExcursionRegime::ThreeHalvesDecay => "n^-3/2 decay",
        ExcursionRegime::Exponential => "exponential decay",
    }
}

fn theory(dist: &BTreeMap<NodeCapability, Q>, len: usize) -> Option<TheoryReference> {
    let p = |k| dist.get(&k).cloned().unwrap_or_else(Q::zero);
    if !p(NodeCapability::Passive).is_zero() || len == 0 {
        return None;
    }
    let w = DyckWeights::new(p(NodeCapability::Decap), p(NodeCapability::Encap), p(NodeCapability::Both)).ok()?;
    let (regime, value) = excursion_prob_asym(&w, (len / 2).max(1) as u32).ok()?;
    let value = if len.is_multiple_of(2) { value } else { 0.0 };
    Some(TheoryReference { regime: regime_name(regime).to_string(), value })
}

/// Share of random paths (node kinds i.i.d. from `dist`) that are feasible.
pub fn random_feasibility_rate(
    dist: &BTreeMap<NodeCapability, Q>,
    path_length: usize,
    runs: u64,
    seed: u64,
) -> Result<FeasibilityRate, NetError> {
    if dist.is_empty() {
        return Err(NetError::EmptyDistribution);
    }
    let steps = NStepSet::new(dist.iter().map(|(k, w)| (k.nstep(), w.clone())))?;
    let cfg = SimConfig::new(steps, path_length, runs, seed)?;
    let e = estimate_class_probability(&cfg, Class::Excursion);
    Ok(FeasibilityRate { estimate: e.estimate, stderr: e.stderr, runs, theory: theory(dist, path_length) })
}
