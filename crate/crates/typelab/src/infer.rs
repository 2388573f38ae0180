use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;

use nwalk_sumset::{detect_type, IntSet, SumsetType};
use nwalk_walk::NStepSet;

use crate::core::{explore, indices, outcome, representative, Outcome, Seen, Variant};
use crate::{build_automaton, TypelabError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest number of automaton states.
    pub max_states: usize,
    /// Reach sets are explored up to this norm.
    pub max_norm: i64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_states: 256, max_norm: 60 }
    }
}

/// Why inference gave up, with the reach sets no type accounts for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InferenceFailure {
    pub reason: String,
    pub unmatched: Vec<IntSet>,
}

impl fmt::Display for InferenceFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.reason)?;
        if !self.unmatched.is_empty() {
            let sets: Vec<String> = self.unmatched.iter().map(IntSet::to_string).collect();
            write!(f, "; unmatched: {}", sets.join(" "))?;
        }
        Ok(())
    }
}

fn fail(reason: impl Into<String>, unmatched: Vec<IntSet>) -> TypelabError {
    TypelabError::Inference(InferenceFailure { reason: reason.into(), unmatched })
}

/// Periodic candidates fitted on large explored sets, chosen greedily to cover them.
fn candidates(large: &[IntSet]) -> Result<Vec<SumsetType>, TypelabError> {
    let mut fitted: BTreeMap<String, (SumsetType, usize)> = BTreeMap::new();
    let mut unmatched = Vec::new();
    for s in large {
        match detect_type(s) {
            Some(fit) => fitted.entry(format!("{:?}", fit.ty)).or_insert((fit.ty, 0)).1 += 1,
            None => unmatched.push(s.clone()),
        }
    }
    if !unmatched.is_empty() {
        return Err(fail("no periodic structure in some explored sets", unmatched));
    }
    let pool: Vec<SumsetType> = fitted.into_values().map(|(t, _)| t).collect();
    let mut left: Vec<&IntSet> = large.iter().collect();
    let mut chosen = Vec::new();
    while !left.is_empty() {
        let best = pool
            .iter()
            .map(|t| (left.iter().filter(|s| t.member(s)).count(), t))
            .max_by_key(|(n, t)| (*n, t.g))
            .filter(|(n, _)| *n > 0);
        let Some((_, t)) = best else {
            return Err(fail("fitted types do not cover the explored sets", left.into_iter().cloned().collect()));
        };
        left.retain(|s| !t.member(s));
        chosen.push(t.clone());
    }
    // Coarser progressions first, so small sets go to the type that can keep them.
    chosen.sort_by_key(|t| std::cmp::Reverse(t.g));
    Ok(chosen)
}

/// Smallest threshold from which the members of type `i` behave alike at
/// every position where the explored sets put them.
fn settle(
    periodic: &[SumsetType],
    i: usize,
    steps: &NStepSet,
    variant: Variant,
    depth: i64,
    seen: &Seen,
) -> Result<i64, TypelabError> {
    let ty = &periodic[i];
    let js = indices(ty, periodic, steps, depth);
    let top = *js.last().expect("nonempty window");
    let mut k = ty.k;
    for &j in &js {
        if crate::core::classify(periodic, &representative(ty, j, 0)) != Some(i) {
            k = k.max(j + 1);
        }
    }
    // (minimum, first index that must agree with the top member)
    let mut positions = Vec::new();
    if seen.generic[i] {
        positions.push((depth, 0));
    }
    for ell in 0..depth {
        if seen.edge[ell as usize][i] {
            positions.push((ell, 1));
        }
    }
    for step in steps.steps() {
        for &(min, skip) in &positions {
            let expect = outcome(periodic, &representative(ty, top, min), step, variant);
            if let Outcome::Unmatched(w) = expect {
                return Err(fail(format!("type (g={}, b={}) leaves every known type under step {step}", ty.g, ty.b), vec![w]));
            }
            for &j in &js {
                if outcome(periodic, &representative(ty, j, min), step, variant) != expect {
                    k = k.max(j + 1 - skip);
                }
            }
        }
    }
    Ok(k)
}

fn depth_of(steps: &NStepSet, variant: Variant) -> i64 {
    match variant {
        Variant::Walk => 0,
        Variant::Meander => steps.max_drop(),
    }
}

/// Infers a list of proper types (periodic ones first, then single sets)
/// that the walk or meander automaton can run on.
pub fn infer_types(steps: &NStepSet, variant: Variant, caps: Caps) -> Result<Vec<SumsetType>, TypelabError> {
    if caps.max_states == 0 || caps.max_norm <= 0 {
        return Err(TypelabError::BadCaps);
    }
    let depth = depth_of(steps, variant);
    let explored = explore(steps, variant, depth, caps.max_norm);
    let mut large: Vec<IntSet> =
        explored.iter().filter(|s| s.norm() > caps.max_norm / 2).map(IntSet::normalized).collect::<HashSet<_>>().into_iter().collect();
    large.sort_by(|a, b| a.elements().cmp(b.elements()));
    let mut periodic = if large.is_empty() { Vec::new() } else { candidates(&large)? };

    loop {
        let seen = Seen::new(&periodic, &explored, variant, depth);
        let mut changed = false;
        for i in 0..periodic.len() {
            let k = settle(&periodic, i, steps, variant, depth, &seen)?;
            if k != periodic[i].k {
                if k * periodic[i].g > caps.max_norm {
                    let ty = &periodic[i];
                    return Err(fail(
                        format!("type (g={}, b={}) does not settle below norm {}", ty.g, ty.b, caps.max_norm),
                        vec![representative(ty, k - 1, 0)],
                    ));
                }
                periodic[i].k = k;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    // Whatever the periodic types miss becomes a single-set state.
    let mut types = periodic;
    let mut added: HashSet<IntSet> = HashSet::new();
    let mut work: VecDeque<IntSet> = explored.iter().cloned().collect();
    while let Some(s) = work.pop_front() {
        let mut found = vec![s.clone()];
        for step in steps.steps() {
            if let Outcome::Unmatched(w) = outcome(&types, &s, step, variant) {
                found.push(w);
            }
        }
        for w in found {
            let n = w.normalized();
            if crate::core::classify(&types, &n).is_some() || !added.insert(n.clone()) {
                continue;
            }
            if n.norm() > caps.max_norm {
                return Err(fail("reach sets outgrow the norm cap without a type", vec![n]));
            }
            types.push(SumsetType::singleton(&n));
            if types.len() > caps.max_states {
                return Err(fail(format!("more than {} states", caps.max_states), vec![n]));
            }
            work.push_back(crate::core::key(&w, variant, depth));
        }
    }
    if types.len() > caps.max_states {
        return Err(fail(format!("more than {} states", caps.max_states), Vec::new()));
    }
    build_automaton(steps, &types, variant).map_err(|e| fail(format!("types failed validation: {e}"), Vec::new()))?;
    Ok(types)
}
