use nwalk_sumset::IntSet;

use crate::{NStepSet, WalkError};

/// A reach set identified by a model-specific shape tag plus its extremes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateKey {
    pub state: u32,
    pub min: i64,
    pub max: i64,
}

/// A finite-state description of reach sets, keyed by `(state, min, max)`.
///
/// `step` with `floored = false` must always produce a key; with
/// `floored = true` it returns `None` when the floor empties the set.
pub trait CompressedModel: Sync {
    fn initial(&self) -> StateKey;
    fn step(&self, key: &StateKey, step: usize, floored: bool) -> Result<Option<StateKey>, WalkError>;
    fn contains_zero(&self, key: &StateKey) -> bool;
    /// Whether the key denotes exactly `{0}`.
    fn is_origin(&self, key: &StateKey) -> bool {
        key.min == 0 && key.max == 0
    }
}

const SINGLE: u32 = 0;
const INTERVAL: u32 = 1;
const EVEN_GAPS: u32 = 2;

/// Reach sets that are arithmetic progressions with difference 1 or 2.
///
/// Valid whenever every step is such a progression: sums and floor cuts stay
/// in the family. This covers the Dyck and Motzkin step sets.
#[derive(Clone, Debug)]
pub struct ProgressionModel {
    steps: Vec<StateKey>,
}

impl ProgressionModel {
    pub fn new(steps: &NStepSet) -> Result<Self, WalkError> {
        let keys = steps.steps().iter().map(progression_key).collect::<Option<Vec<_>>>();
        match keys {
            Some(steps) => Ok(ProgressionModel { steps }),
            None => {
                let bad = steps.steps().iter().find(|s| progression_key(s).is_none()).expect("some step failed");
                Err(WalkError::NotClosed(format!("step {bad} is not a progression with difference 1 or 2")))
            }
        }
    }

    /// The set a key stands for.
    pub fn materialize(key: &StateKey) -> IntSet {
        let d = if key.state == EVEN_GAPS { 2 } else { 1 };
        IntSet::progression(key.min, key.max, d)
    }
}

fn progression_key(s: &IntSet) -> Option<StateKey> {
    let (lo, hi) = (s.min()?, s.max()?);
    if lo == hi {
        return Some(StateKey { state: SINGLE, min: lo, max: hi });
    }
    for (d, tag) in [(1, INTERVAL), (2, EVEN_GAPS)] {
        if *s == IntSet::progression(lo, hi, d) {
            return Some(StateKey { state: tag, min: lo, max: hi });
        }
    }
    None
}

fn canonical(state: u32, min: i64, max: i64) -> StateKey {
    let state = if min == max { SINGLE } else { state };
    StateKey { state, min, max }
}

impl CompressedModel for ProgressionModel {
    fn initial(&self) -> StateKey {
        StateKey { state: SINGLE, min: 0, max: 0 }
    }

    fn step(&self, key: &StateKey, step: usize, floored: bool) -> Result<Option<StateKey>, WalkError> {
        let s = self.steps.get(step).ok_or_else(|| WalkError::NotClosed(format!("unknown step index {step}")))?;
        let tag = match (key.state, s.state) {
            (SINGLE, t) | (t, SINGLE) => t,
            (EVEN_GAPS, EVEN_GAPS) => EVEN_GAPS,
            _ => INTERVAL,
        };
        let (mut lo, hi) = (key.min + s.min, key.max + s.max);
        if floored && lo < 0 {
            lo = if tag == EVEN_GAPS { lo.rem_euclid(2) } else { 0 };
            if lo > hi {
                return Ok(None);
            }
        }
        Ok(Some(canonical(tag, lo, hi)))
    }

    fn contains_zero(&self, key: &StateKey) -> bool {
        key.min <= 0 && 0 <= key.max && (key.state != EVEN_GAPS || key.min % 2 == 0)
    }
}
