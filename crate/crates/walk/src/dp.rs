use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use nwalk_series::{BivariateSeries, LaurentPoly, Q};
use nwalk_sumset::{IntSet, PackedSet};

use crate::compressed::{CompressedModel, StateKey};
use crate::{NStepSet, WalkError};

/// How DP states are keyed.
#[derive(Clone, Copy)]
pub enum StateMode<'a> {
    /// The whole reach set. Exact for any step set; states grow with the length.
    Full,
    /// `(state, min, max)` through a finite-state model.
    Compressed(&'a dyn CompressedModel),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Class {
    Walk,
    Bridge,
    Meander,
    Excursion,
}

impl Class {
    pub const ALL: [Class; 4] = [Class::Walk, Class::Bridge, Class::Meander, Class::Excursion];

    pub fn name(self) -> &'static str {
        match self {
            Class::Walk => "walk",
            Class::Bridge => "bridge",
            Class::Meander => "meander",
            Class::Excursion => "excursion",
        }
    }

    pub fn parse(s: &str) -> Option<Class> {
        Class::ALL.into_iter().find(|c| c.name() == s || format!("{}s", c.name()) == s)
    }

    fn floored(self) -> bool {
        matches!(self, Class::Meander | Class::Excursion)
    }
}

/// Total weight per length for each class, indexed `0..=n_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassCounts {
    pub walks: Vec<Q>,
    pub bridges: Vec<Q>,
    pub meanders: Vec<Q>,
    pub excursions: Vec<Q>,
}

impl ClassCounts {
    pub fn get(&self, class: Class) -> &[Q] {
        match class {
            Class::Walk => &self.walks,
            Class::Bridge => &self.bridges,
            Class::Meander => &self.meanders,
            Class::Excursion => &self.excursions,
        }
    }
}

/// One DP state after `n` steps. `weight / denominator` is its total weight.
#[derive(Clone, Debug)]
pub struct LayerEntry {
    pub min: i64,
    pub max: i64,
    pub contains_zero: bool,
    pub is_origin: bool,
    pub weight: BigInt,
}

#[derive(Clone, Debug)]
pub struct Layer {
    pub n: usize,
    pub denominator: BigInt,
    pub entries: Vec<LayerEntry>,
}

trait Dynamics {
    type Key: Clone + Eq + Hash;
    fn initial(&self) -> Self::Key;
    fn step(&self, key: &Self::Key, step: usize, floored: bool) -> Result<Option<Self::Key>, WalkError>;
    fn bounds(&self, key: &Self::Key) -> (i64, i64);
    fn contains_zero(&self, key: &Self::Key) -> bool;
    fn is_origin(&self, key: &Self::Key) -> bool;
}

struct FullSets<'a> {
    steps: &'a NStepSet,
}

impl Dynamics for FullSets<'_> {
    type Key = PackedSet;

    fn initial(&self) -> PackedSet {
        IntSet::singleton(0).pack()
    }

    fn step(&self, key: &PackedSet, step: usize, floored: bool) -> Result<Option<PackedSet>, WalkError> {
        let mut s = key.unpack().sumset(self.steps.step(step));
        if floored {
            s = s.floor_at_zero();
            if s.is_empty() {
                return Ok(None);
            }
        }
        Ok(Some(s.pack()))
    }

    fn bounds(&self, key: &PackedSet) -> (i64, i64) {
        let s = key.unpack();
        (s.min().expect("nonempty state"), s.max().expect("nonempty state"))
    }

    fn contains_zero(&self, key: &PackedSet) -> bool {
        key.unpack().contains(0)
    }

    fn is_origin(&self, key: &PackedSet) -> bool {
        key.unpack() == IntSet::singleton(0)
    }
}

struct Compressed<'a> {
    model: &'a dyn CompressedModel,
}

impl Dynamics for Compressed<'_> {
    type Key = StateKey;

    fn initial(&self) -> StateKey {
        self.model.initial()
    }

    fn step(&self, key: &StateKey, step: usize, floored: bool) -> Result<Option<StateKey>, WalkError> {
        let next = self.model.step(key, step, floored)?;
        if next.is_none() && !floored {
            return Err(WalkError::NotClosed(format!("model produced no state from {key:?} under step {step}")));
        }
        Ok(next)
    }

    fn bounds(&self, key: &StateKey) -> (i64, i64) {
        (key.min, key.max)
    }

    fn contains_zero(&self, key: &StateKey) -> bool {
        self.model.contains_zero(key)
    }

    fn is_origin(&self, key: &StateKey) -> bool {
        self.model.is_origin(key)
    }
}

/// Steps with nonzero weight, as `(index, scaled integer weight)`, plus the scale.
fn active_steps(steps: &NStepSet) -> (Vec<(usize, BigInt)>, BigInt) {
    let (w, l) = steps.scaled();
    (w.into_iter().enumerate().filter(|(_, w)| !w.is_zero()).collect(), l)
}

/// Runs the layered DP, handing each layer (including `n = 0`) to `f`.
fn run<D: Dynamics>(
    d: &D,
    steps: &NStepSet,
    n_max: usize,
    floored: bool,
    mut f: impl FnMut(usize, &HashMap<D::Key, BigInt>, &BigInt),
) -> Result<(), WalkError> {
    let (active, scale) = active_steps(steps);
    let mut layer: HashMap<D::Key, BigInt> = HashMap::new();
    layer.insert(d.initial(), BigInt::one());
    let mut denom = BigInt::one();
    f(0, &layer, &denom);
    for n in 1..=n_max {
        let mut next: HashMap<D::Key, BigInt> = HashMap::with_capacity(layer.len() * 2);
        for (key, w) in &layer {
            for (i, wi) in &active {
                if let Some(k2) = d.step(key, *i, floored)? {
                    *next.entry(k2).or_insert_with(BigInt::zero) += w * wi;
                }
            }
        }
        layer = next;
        denom *= &scale;
        f(n, &layer, &denom);
    }
    Ok(())
}

fn ratio(num: BigInt, den: &BigInt) -> Q {
    Q::new(num, den.clone())
}

fn sums<D: Dynamics>(d: &D, steps: &NStepSet, n_max: usize, class: Class) -> Result<Vec<Q>, WalkError> {
    let mut out = Vec::with_capacity(n_max + 1);
    run(d, steps, n_max, class.floored(), |_, layer, den| {
        let total = layer
            .iter()
            .filter(|(k, _)| match class {
                Class::Walk | Class::Meander => true,
                Class::Bridge | Class::Excursion => d.contains_zero(k),
            })
            .fold(BigInt::zero(), |acc, (_, w)| acc + w);
        out.push(ratio(total, den));
    })?;
    Ok(out)
}

/// Total weight of length-`n` walks in `class`, for `n` in `0..=n_max`.
pub fn count_by_dp(steps: &NStepSet, n_max: usize, class: Class, mode: StateMode) -> Result<Vec<Q>, WalkError> {
    match mode {
        StateMode::Full => sums(&FullSets { steps }, steps, n_max, class),
        StateMode::Compressed(model) => sums(&Compressed { model }, steps, n_max, class),
    }
}

pub fn count_all(steps: &NStepSet, n_max: usize, mode: StateMode) -> Result<ClassCounts, WalkError> {
    Ok(ClassCounts {
        walks: count_by_dp(steps, n_max, Class::Walk, mode)?,
        bridges: count_by_dp(steps, n_max, Class::Bridge, mode)?,
        meanders: count_by_dp(steps, n_max, Class::Meander, mode)?,
        excursions: count_by_dp(steps, n_max, Class::Excursion, mode)?,
    })
}

fn layers_with<D: Dynamics>(
    d: &D,
    steps: &NStepSet,
    n_max: usize,
    floored: bool,
    f: &mut dyn FnMut(&Layer),
) -> Result<(), WalkError> {
    run(d, steps, n_max, floored, |n, layer, den| {
        let entries = layer
            .iter()
            .map(|(k, w)| {
                let (min, max) = d.bounds(k);
                LayerEntry { min, max, contains_zero: d.contains_zero(k), is_origin: d.is_origin(k), weight: w.clone() }
            })
            .collect();
        f(&Layer { n, denominator: den.clone(), entries });
    })
}

/// Visits every DP layer `0..=n_max`; `floored` selects the meander dynamics.
pub fn for_each_layer(
    steps: &NStepSet,
    n_max: usize,
    floored: bool,
    mode: StateMode,
    mut f: impl FnMut(&Layer),
) -> Result<(), WalkError> {
    match mode {
        StateMode::Full => layers_with(&FullSets { steps }, steps, n_max, floored, &mut f),
        StateMode::Compressed(model) => layers_with(&Compressed { model }, steps, n_max, floored, &mut f),
    }
}

/// `Σ weight · x^min y^max t^n` over reach sets (or floored reach sets).
pub fn minmax_series(steps: &NStepSet, order: usize, floored: bool, mode: StateMode) -> Result<BivariateSeries, WalkError> {
    let mut coeffs = Vec::with_capacity(order);
    if order > 0 {
        for_each_layer(steps, order - 1, floored, mode, |layer| {
            coeffs.push(LaurentPoly::from_terms(
                layer.entries.iter().map(|e| (e.min, e.max, ratio(e.weight.clone(), &layer.denominator))),
            ));
        })?;
    }
    Ok(BivariateSeries::from_coeffs(coeffs))
}

/// Distribution of the final maximum over excursions of length `n` (unnormalized weights).
pub fn final_max_distribution(steps: &NStepSet, n: usize, mode: StateMode) -> Result<BTreeMap<i64, Q>, WalkError> {
    let mut out = BTreeMap::new();
    for_each_layer(steps, n, true, mode, |layer| {
        if layer.n != n {
            return;
        }
        for e in layer.entries.iter().filter(|e| e.contains_zero) {
            *out.entry(e.max).or_insert_with(Q::zero) += ratio(e.weight.clone(), &layer.denominator);
        }
    })?;
    Ok(out)
}

fn returns_with<D: Dynamics>(d: &D, steps: &NStepSet, n: usize) -> Result<Vec<Q>, WalkError> {
    let (active, scale) = active_steps(steps);
    let mut layer: HashMap<(D::Key, u32), BigInt> = HashMap::new();
    layer.insert((d.initial(), 0), BigInt::one());
    let mut denom = BigInt::one();
    for _ in 0..n {
        let mut next: HashMap<(D::Key, u32), BigInt> = HashMap::with_capacity(layer.len() * 2);
        for ((key, r), w) in &layer {
            for (i, wi) in &active {
                if let Some(k2) = d.step(key, *i, true)? {
                    let r2 = r + u32::from(d.is_origin(&k2));
                    *next.entry((k2, r2)).or_insert_with(BigInt::zero) += w * wi;
                }
            }
        }
        layer = next;
        denom *= &scale;
    }
    let mut out: Vec<BigInt> = Vec::new();
    for ((key, r), w) in &layer {
        if d.contains_zero(key) {
            let r = *r as usize;
            if out.len() <= r {
                out.resize(r + 1, BigInt::zero());
            }
            out[r] += w;
        }
    }
    Ok(out.into_iter().map(|w| ratio(w, &denom)).collect())
}

/// Weight of length-`n` excursions by number of returns to `{0}` (index = returns).
///
/// A return is any step `1..=n` after which the floored reach set is exactly `{0}`.
pub fn returns_distribution(steps: &NStepSet, n: usize, mode: StateMode) -> Result<Vec<Q>, WalkError> {
    match mode {
        StateMode::Full => returns_with(&FullSets { steps }, steps, n),
        StateMode::Compressed(model) => returns_with(&Compressed { model }, steps, n),
    }
}

/// Every distinct reach set at length `n` with its weight.
pub fn reach_sets_at(steps: &NStepSet, n: usize, floored: bool) -> Result<Vec<(IntSet, Q)>, WalkError> {
    let mut out = Vec::new();
    run(&FullSets { steps }, steps, n, floored, |k, layer, den| {
        if k == n {
            out = layer.iter().map(|(s, w)| (s.unpack(), ratio(w.clone(), den))).collect();
        }
    })?;
    out.sort_by(|a, b| a.0.elements().cmp(b.0.elements()));
    Ok(out)
}
