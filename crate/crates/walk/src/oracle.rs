use std::collections::BTreeMap;

use num_traits::{One, Zero};
use nwalk_series::Q;
use nwalk_sumset::IntSet;

use crate::{Class, ClassCounts, NStepSet, ReachState, WalkClass, WalkError};

/// Default ceiling on step applications for exhaustive enumeration.
pub const DEFAULT_CAP: u64 = 100_000_000;

/// Step applications needed to enumerate every walk of length `1..=n`.
fn work(k: usize, n: usize) -> Option<u64> {
    let mut total: u64 = 0;
    let mut level: u64 = 1;
    for _ in 0..n {
        level = level.checked_mul(k as u64)?;
        total = total.checked_add(level)?;
    }
    Some(total)
}

fn check_cap(steps: &NStepSet, n: usize, cap: u64) -> Result<(), WalkError> {
    match work(steps.len(), n) {
        Some(w) if w <= cap => Ok(()),
        w => Err(WalkError::CapExceeded { needed: w.unwrap_or(u64::MAX), cap }),
    }
}

/// Every walk of length exactly `n`, in lexicographic step order, with its class.
pub fn enumerate_oracle(steps: &NStepSet, n: usize, cap: u64) -> Result<Vec<(Vec<IntSet>, WalkClass)>, WalkError> {
    check_cap(steps, n, cap)?;
    let mut out = Vec::new();
    let mut path = Vec::with_capacity(n);
    fn go(steps: &NStepSet, n: usize, st: &ReachState, path: &mut Vec<usize>, out: &mut Vec<(Vec<IntSet>, WalkClass)>) {
        if path.len() == n {
            out.push((path.iter().map(|&i| steps.step(i).clone()).collect(), WalkClass::of(st)));
            return;
        }
        for i in 0..steps.len() {
            path.push(i);
            go(steps, n, &st.step(steps.step(i)), path, out);
            path.pop();
        }
    }
    go(steps, n, &ReachState::initial(), &mut path, &mut out);
    Ok(out)
}

/// Class tallies for lengths `0..=n_max` by walking the full tree of walks.
///
/// Independent of the DP: it applies plain set updates along each walk.
pub fn oracle_counts(steps: &NStepSet, n_max: usize, cap: u64) -> Result<ClassCounts, WalkError> {
    check_cap(steps, n_max, cap)?;
    let mut tally: BTreeMap<(usize, Class), Q> = BTreeMap::new();
    fn add(tally: &mut BTreeMap<(usize, Class), Q>, n: usize, c: Class, w: &Q) {
        *tally.entry((n, c)).or_insert_with(Q::zero) += w;
    }
    fn go(steps: &NStepSet, n_max: usize, st: &ReachState, w: &Q, tally: &mut BTreeMap<(usize, Class), Q>) {
        let n = st.length;
        let c = WalkClass::of(st);
        add(tally, n, Class::Walk, w);
        if c.is_bridge {
            add(tally, n, Class::Bridge, w);
        }
        if c.is_meander {
            add(tally, n, Class::Meander, w);
        }
        if c.is_excursion {
            add(tally, n, Class::Excursion, w);
        }
        if n == n_max {
            return;
        }
        for (s, ws) in steps.iter() {
            go(steps, n_max, &st.step(s), &(w * ws), tally);
        }
    }
    go(steps, n_max, &ReachState::initial(), &Q::one(), &mut tally);
    let column = |c: Class| (0..=n_max).map(|n| tally.get(&(n, c)).cloned().unwrap_or_else(Q::zero)).collect();
    Ok(ClassCounts {
        walks: column(Class::Walk),
        bridges: column(Class::Bridge),
        meanders: column(Class::Meander),
        excursions: column(Class::Excursion),
    })
}

/// Classical one-dimensional meanders or excursions with weighted integer steps.
///
/// `class` must be `Meander` or `Excursion`.
pub fn classical_count(st: &[(i64, Q)], n_max: usize, class: Class) -> Vec<Q> {
    assert!(matches!(class, Class::Meander | Class::Excursion), "classical_count covers meanders and excursions");
    let mut heights: BTreeMap<i64, Q> = BTreeMap::new();
    heights.insert(0, Q::one());
    let mut out = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let v = match class {
            Class::Excursion => heights.get(&0).cloned().unwrap_or_else(Q::zero),
            _ => heights.values().fold(Q::zero(), |a, b| a + b),
        };
        out.push(v);
        if n == n_max {
            break;
        }
        let mut next: BTreeMap<i64, Q> = BTreeMap::new();
        for (h, w) in &heights {
            for (s, ws) in st {
                if ws.is_zero() || h + s < 0 {
                    continue;
                }
                *next.entry(h + s).or_insert_with(Q::zero) += w * ws;
            }
        }
        heights = next;
    }
    out
}
