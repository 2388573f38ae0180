use nwalk_sumset::{IntSet, SumsetType};
use nwalk_walk::NStepSet;

/// Unconstrained walks, or meanders (reach sets cut at 0 after every step).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Walk,
    Meander,
}

/// Target state and the shift of the two extremes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Move {
    pub to: usize,
    pub dmin: i64,
    pub dmax: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Outcome {
    Dies,
    To(Move),
    Unmatched(IntSet),
}

pub(crate) fn apply(set: &IntSet, step: &IntSet, variant: Variant) -> Option<IntSet> {
    let s = set.sumset(step);
    let s = match variant {
        Variant::Walk => s,
        Variant::Meander => s.floor_at_zero(),
    };
    (!s.is_empty()).then_some(s)
}

/// First type owning the set (up to translation).
pub(crate) fn classify(types: &[SumsetType], set: &IntSet) -> Option<usize> {
    let n = set.normalized();
    types.iter().position(|t| t.member(&n))
}

/// Member `j` of `ty`, translated to the given minimum.
pub(crate) fn representative(ty: &SumsetType, j: i64, min: i64) -> IntSet {
    let r = ty.raw_instance(j, 0);
    let lo = r.min().expect("proper types have nonempty members");
    r.shift(min - lo)
}

pub(crate) fn outcome(types: &[SumsetType], from: &IntSet, step: &IntSet, variant: Variant) -> Outcome {
    match apply(from, step, variant) {
        None => Outcome::Dies,
        Some(r) => match classify(types, &r) {
            Some(to) => Outcome::To(Move {
                to,
                dmin: r.min().unwrap() - from.min().unwrap(),
                dmax: r.max().unwrap() - from.max().unwrap(),
            }),
            None => Outcome::Unmatched(r),
        },
    }
}

fn max_or_minus_one(s: &IntSet) -> i64 {
    s.max().unwrap_or(-1)
}

/// Largest member index inspected when checking that `ty` behaves uniformly.
///
/// Past this index the two prunings, the floor and every step's reach sit far
/// apart, and every other type's threshold is behind us.
pub(crate) fn window(ty: &SumsetType, types: &[SumsetType], steps: &NStepSet, depth: i64) -> i64 {
    if ty.g == 0 {
        return ty.k;
    }
    let others = types.iter().map(|t| t.k * t.g).max().unwrap_or(0);
    let span = max_or_minus_one(&ty.a) + max_or_minus_one(&ty.c) + 2 + ty.b.norm() + 2 * steps.max_norm() + depth + others;
    ty.k + 3 + span / ty.g
}

/// Member indices checked for `ty`.
pub(crate) fn indices(ty: &SumsetType, types: &[SumsetType], steps: &NStepSet, depth: i64) -> Vec<i64> {
    (ty.k..=window(ty, types, steps, depth)).collect()
}

/// Translation class of a reach set. Meander sets keep their minimum up to
/// `3 depth + 2`, enough to see every way back down to the floor tables.
pub(crate) fn key(set: &IntSet, variant: Variant, depth: i64) -> IntSet {
    match variant {
        Variant::Walk => set.normalized(),
        Variant::Meander => {
            let lo = set.min().expect("nonempty");
            set.shift(lo.min(3 * depth + 2) - lo)
        }
    }
}

/// Every reachable set class with norm at most `max_norm`.
pub(crate) fn explore(steps: &NStepSet, variant: Variant, depth: i64, max_norm: i64) -> Vec<IntSet> {
    use std::collections::{HashSet, VecDeque};
    let start = IntSet::singleton(0);
    let mut seen: HashSet<IntSet> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    let mut out = Vec::new();
    while let Some(s) = queue.pop_front() {
        for step in steps.steps() {
            if let Some(r) = apply(&s, step, variant) {
                let r = key(&r, variant, depth);
                if r.norm() <= max_norm && seen.insert(r.clone()) {
                    queue.push_back(r);
                }
            }
        }
        out.push(s);
    }
    out
}

/// Table positions met by explored sets: `generic[state]`, `edge[ell][state]`, `corner[ell][state]`.
#[derive(Clone, Debug)]
pub(crate) struct Seen {
    pub generic: Vec<bool>,
    pub edge: Vec<Vec<bool>>,
    pub corner: Vec<Vec<bool>>,
}

impl Seen {
    pub(crate) fn new(types: &[SumsetType], explored: &[IntSet], variant: Variant, depth: i64) -> Seen {
        let n = types.len();
        let mut seen = Seen { generic: vec![variant == Variant::Walk; n], edge: vec![vec![false; n]; depth as usize], corner: vec![vec![false; n]; depth as usize] };
        if variant == Variant::Walk {
            return seen;
        }
        let sigma: Vec<i64> = types.iter().map(|t| representative(t, t.k, 0).norm()).collect();
        for s in explored {
            let Some(i) = classify(types, s) else { continue };
            let lo = s.min().expect("nonempty");
            if lo >= depth {
                seen.generic[i] = true;
            } else if s.norm() == sigma[i] {
                seen.corner[lo as usize][i] = true;
            } else {
                seen.edge[lo as usize][i] = true;
            }
        }
        seen
    }
}
