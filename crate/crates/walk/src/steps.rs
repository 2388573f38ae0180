use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use nwalk_series::{parse_q, Q};
use nwalk_sumset::IntSet;

use crate::WalkError;

/// A finite collection of N-steps, each with a nonnegative rational weight.
///
/// Steps keep their insertion order, which fixes the step indices used by the
/// DP engines and by compressed models.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NStepSet {
    steps: Vec<IntSet>,
    weights: Vec<Q>,
}

impl NStepSet {
    /// Duplicate sets are merged and their weights added.
    pub fn new<I: IntoIterator<Item = (IntSet, Q)>>(pairs: I) -> Result<Self, WalkError> {
        let mut steps: Vec<IntSet> = Vec::new();
        let mut weights: Vec<Q> = Vec::new();
        for (s, w) in pairs {
            if s.is_empty() {
                return Err(WalkError::EmptyStep);
            }
            if w.is_negative() {
                return Err(WalkError::NegativeWeight(w.to_string()));
            }
            match steps.iter().position(|t| *t == s) {
                Some(i) => weights[i] += w,
                None => {
                    steps.push(s);
                    weights.push(w);
                }
            }
        }
        if steps.is_empty() {
            return Err(WalkError::NoSteps);
        }
        Ok(NStepSet { steps, weights })
    }

    /// Every step with weight 1.
    pub fn unweighted<I: IntoIterator<Item = IntSet>>(sets: I) -> Result<Self, WalkError> {
        NStepSet::new(sets.into_iter().map(|s| (s, Q::one())))
    }

    /// `"{-1};{1};{-1,1}"` plus optional `"1/3,1/3,1/3"` aligned with the steps.
    pub fn parse(steps: &str, weights: Option<&str>) -> Result<Self, WalkError> {
        let sets = parse_walk(steps)?;
        let ws = match weights {
            None => vec![Q::one(); sets.len()],
            Some(w) => {
                let ws = w
                    .split(',')
                    .map(|x| parse_q(x.trim()).map_err(|_| WalkError::Parse(format!("bad weight {x:?}"))))
                    .collect::<Result<Vec<_>, _>>()?;
                if ws.len() != sets.len() {
                    return Err(WalkError::WeightCount { steps: sets.len(), weights: ws.len() });
                }
                ws
            }
        };
        NStepSet::new(sets.into_iter().zip(ws))
    }

    /// Steps `{-1}, {1}, {-1,1}`.
    pub fn dyck(p_m1: Q, p_p1: Q, p_m1p1: Q) -> Result<Self, WalkError> {
        NStepSet::new([(set(&[-1]), p_m1), (set(&[1]), p_p1), (set(&[-1, 1]), p_m1p1)])
    }

    pub fn dyck_unweighted() -> Self {
        NStepSet::dyck(Q::one(), Q::one(), Q::one()).expect("valid step set")
    }

    /// Steps in the order `{1}, {-1}, {0}, {-1,0}, {0,1}, {-1,1}, {-1,0,1}`.
    pub fn motzkin(weights: [Q; 7]) -> Result<Self, WalkError> {
        NStepSet::new(MOTZKIN_ORDER.iter().map(|s| set(s)).zip(weights))
    }

    pub fn motzkin_unweighted() -> Self {
        NStepSet::motzkin(std::array::from_fn(|_| Q::one())).expect("valid step set")
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn steps(&self) -> &[IntSet] {
        &self.steps
    }

    pub fn weights(&self) -> &[Q] {
        &self.weights
    }

    pub fn step(&self, i: usize) -> &IntSet {
        &self.steps[i]
    }

    pub fn weight(&self, i: usize) -> &Q {
        &self.weights[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = (&IntSet, &Q)> {
        self.steps.iter().zip(&self.weights)
    }

    pub fn total_weight(&self) -> Q {
        self.weights.iter().fold(Q::zero(), |a, w| a + w)
    }

    pub fn is_unweighted(&self) -> bool {
        self.weights.iter().all(|w| w.is_one())
    }

    pub fn max_norm(&self) -> i64 {
        self.steps.iter().map(IntSet::norm).max().unwrap_or(0)
    }

    /// `-min` over all step minima, clamped at 0: how far one step can drop.
    pub fn max_drop(&self) -> i64 {
        self.steps.iter().filter_map(IntSet::min).map(|m| -m).max().unwrap_or(0).max(0)
    }

    /// Each step `s` replaced by `-s`, weights kept.
    pub fn reflected(&self) -> NStepSet {
        NStepSet::new(self.iter().map(|(s, w)| (IntSet::new(s.iter().map(|x| -x)), w.clone()))).expect("reflection keeps validity")
    }

    /// The weighted multiset of step maxima.
    pub fn top_path_steps(&self) -> Vec<(i64, Q)> {
        let mut acc: BTreeMap<i64, Q> = BTreeMap::new();
        for (s, w) in self.iter() {
            *acc.entry(s.max().expect("nonempty step")).or_insert_with(Q::zero) += w;
        }
        acc.into_iter().collect()
    }

    /// Integer weights `w_i · L` and the common denominator `L`.
    pub(crate) fn scaled(&self) -> (Vec<BigInt>, BigInt) {
        let l = self.weights.iter().fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
        let ints = self.weights.iter().map(|w| (w * Q::from_integer(l.clone())).to_integer()).collect();
        (ints, l)
    }
}

pub(crate) const MOTZKIN_ORDER: [&[i64]; 7] = [&[1], &[-1], &[0], &[-1, 0], &[0, 1], &[-1, 1], &[-1, 0, 1]];

fn set(v: &[i64]) -> IntSet {
    IntSet::new(v.iter().copied())
}

/// Semicolon-separated IntSet literals.
pub fn parse_walk(s: &str) -> Result<Vec<IntSet>, WalkError> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(';').map(|part| part.trim().parse::<IntSet>().map_err(WalkError::from)).collect()
}
