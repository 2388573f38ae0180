use std::collections::BTreeMap;
use std::fmt::Write as _;

use nwalk_sumset::IntSet;
use nwalk_walk::{Class, CompressedModel, NStepSet, ProgressionModel, ReachState, StateKey};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::{BitStream, SimError, StepSampler};

/// A weighted step set whose weights are probabilities, plus run parameters.
#[derive(Clone, Debug)]
pub struct SimConfig {
    steps: NStepSet,
    n: usize,
    runs: u64,
    seed: u64,
    sampler: StepSampler,
    base: ChaCha8Rng,
}

impl SimConfig {
    pub fn new(steps: NStepSet, n: usize, runs: u64, seed: u64) -> Result<Self, SimError> {
        if runs == 0 {
            return Err(SimError::NoRuns);
        }
        let sampler = StepSampler::new(steps.weights())?;
        Ok(SimConfig { steps, n, runs, seed, sampler, base: ChaCha8Rng::seed_from_u64(seed) })
    }

    pub fn steps(&self) -> &NStepSet {
        &self.steps
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn runs(&self) -> u64 {
        self.runs
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// The bit source of run `run`: ChaCha8 seeded with `seed`, on stream `run`.
    pub fn bits(&self, run: u64) -> BitStream<ChaCha8Rng> {
        let mut rng = self.base.clone();
        rng.set_stream(run);
        BitStream::new(rng)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampledWalk {
    /// Indices into the step set.
    pub indices: Vec<usize>,
    pub walk: Vec<IntSet>,
    /// Reach states after each prefix, starting with the empty walk.
    pub trace: Vec<ReachState>,
}

/// The walk of run 0.
pub fn sample_walk(cfg: &SimConfig) -> SampledWalk {
    sample_walk_run(cfg, 0)
}

pub fn sample_walk_run(cfg: &SimConfig, run: u64) -> SampledWalk {
    let mut src = cfg.bits(run);
    let indices: Vec<usize> = (0..cfg.n).map(|_| cfg.sampler.draw(&mut src)).collect();
    let walk: Vec<IntSet> = indices.iter().map(|&i| cfg.steps.step(i).clone()).collect();
    let trace = ReachState::trace(&walk);
    SampledWalk { indices, walk, trace }
}

/// Reach-set dynamics used by the simulator.
trait Track: Sync {
    type Pos: Clone;
    fn initial(&self) -> Self::Pos;
    fn step(&self, p: &Self::Pos, i: usize, floored: bool) -> Option<Self::Pos>;
    fn bounds(&self, p: &Self::Pos) -> (i64, i64);
    fn contains_zero(&self, p: &Self::Pos) -> bool;
}

impl Track for ProgressionModel {
    type Pos = StateKey;

    fn initial(&self) -> StateKey {
        CompressedModel::initial(self)
    }

    fn step(&self, p: &StateKey, i: usize, floored: bool) -> Option<StateKey> {
        CompressedModel::step(self, p, i, floored).expect("sampled index is a step")
    }

    fn bounds(&self, p: &StateKey) -> (i64, i64) {
        (p.min, p.max)
    }

    fn contains_zero(&self, p: &StateKey) -> bool {
        CompressedModel::contains_zero(self, p)
    }
}

/// Whole reach sets, for step sets outside the progression model.
struct Sets<'a>(&'a NStepSet);

impl Track for Sets<'_> {
    type Pos = IntSet;

    fn initial(&self) -> IntSet {
        IntSet::singleton(0)
    }

    fn step(&self, p: &IntSet, i: usize, floored: bool) -> Option<IntSet> {
        let mut next = p.sumset(self.0.step(i));
        if floored {
            next = next.floor_at_zero();
        }
        (!next.is_empty()).then_some(next)
    }

    fn bounds(&self, p: &IntSet) -> (i64, i64) {
        (p.min().expect("nonempty"), p.max().expect("nonempty"))
    }

    fn contains_zero(&self, p: &IntSet) -> bool {
        p.contains(0)
    }
}

/// What a single run needs to report.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Goal {
    /// Stop once 0 cannot be in the final unconstrained set.
    Bridge,
    /// Stop once the floored set empties.
    Meander,
    /// Also stop once the floored set sits too high to come back to 0.
    Excursion,
    /// Full unconstrained trajectory.
    Free,
}

struct RunEnd<P> {
    pos: P,
    returns: u32,
}

struct Runner<'a, T> {
    cfg: &'a SimConfig,
    track: &'a T,
    drop: i64,
    rise: i64,
}

impl<'a, T: Track> Runner<'a, T> {
    fn new(cfg: &'a SimConfig, track: &'a T) -> Self {
        let rise = cfg.steps.steps().iter().filter_map(IntSet::max).max().unwrap_or(0).max(0);
        Runner { cfg, track, drop: cfg.steps.max_drop(), rise }
    }

    /// `None` when the run is rejected for `goal`, possibly before its last step.
    fn run(&self, run: u64, goal: Goal) -> Option<RunEnd<T::Pos>> {
        let floored = matches!(goal, Goal::Meander | Goal::Excursion);
        let n = self.cfg.n;
        let mut src = self.cfg.bits(run);
        let mut pos = self.track.initial();
        let mut returns = 0;
        for done in 1..=n {
            let i = self.cfg.sampler.draw(&mut src);
            pos = self.track.step(&pos, i, floored)?;
            let (lo, hi) = self.track.bounds(&pos);
            returns += u32::from(lo == 0 && hi == 0);
            let left = (n - done) as i64;
            let hopeless = match goal {
                Goal::Bridge => lo > left * self.drop || hi < -left * self.rise,
                Goal::Excursion => lo > left * self.drop,
                Goal::Meander | Goal::Free => false,
            };
            if hopeless {
                return None;
            }
        }
        Some(RunEnd { pos, returns })
    }
}

/// A Monte Carlo proportion with its binomial standard error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub estimate: f64,
    pub stderr: f64,
    pub hits: u64,
    pub runs: u64,
}

impl Estimate {
    fn new(hits: u64, runs: u64) -> Self {
        let p = hits as f64 / runs as f64;
        Estimate { estimate: p, stderr: (p * (1.0 - p) / runs as f64).sqrt(), hits, runs }
    }
}

pub fn estimate_class_probability(cfg: &SimConfig, class: Class) -> Estimate {
    match ProgressionModel::new(&cfg.steps) {
        Ok(m) => estimate_with(cfg, &m, class),
        Err(_) => estimate_with(cfg, &Sets(&cfg.steps), class),
    }
}

fn estimate_with<T: Track>(cfg: &SimConfig, track: &T, class: Class) -> Estimate {
    let goal = match class {
        Class::Walk => return Estimate::new(cfg.runs, cfg.runs),
        Class::Bridge => Goal::Bridge,
        Class::Meander => Goal::Meander,
        Class::Excursion => Goal::Excursion,
    };
    let runner = Runner::new(cfg, track);
    let hits = (0..cfg.runs)
        .into_par_iter()
        .filter(|&r| match runner.run(r, goal) {
            None => false,
            Some(end) => class == Class::Meander || track.contains_zero(&end.pos),
        })
        .count() as u64;
    Estimate::new(hits, cfg.runs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Statistic {
    /// Largest point of the final reach set.
    FinalMax,
    /// Steps after which the reach set is exactly `{0}`.
    ReturnsToZero,
}

impl Statistic {
    pub fn name(self) -> &'static str {
        match self {
            Statistic::FinalMax => "final_max",
            Statistic::ReturnsToZero => "returns",
        }
    }

    pub fn parse(s: &str) -> Option<Statistic> {
        match s {
            "final_max" | "final-max" | "max" => Some(Statistic::FinalMax),
            "returns" | "returns_to_zero" | "returns-to-zero" => Some(Statistic::ReturnsToZero),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Histogram {
    pub statistic: Statistic,
    pub conditioned: bool,
    pub counts: BTreeMap<i64, u64>,
    pub accepted: u64,
    pub runs: u64,
}

impl Histogram {
    pub fn pmf(&self) -> BTreeMap<i64, f64> {
        self.counts.iter().map(|(&k, &c)| (k, c as f64 / self.accepted as f64)).collect()
    }

    pub fn mean(&self) -> f64 {
        self.counts.iter().map(|(&k, &c)| k as f64 * c as f64).sum::<f64>() / self.accepted as f64
    }

    /// Standard error of the mean.
    pub fn mean_stderr(&self) -> f64 {
        let m = self.mean();
        let n = self.accepted as f64;
        let var = self.counts.iter().map(|(&k, &c)| (k as f64 - m).powi(2) * c as f64).sum::<f64>() / (n - 1.0).max(1.0);
        (var / n).sqrt()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("bin,count\n");
        for (k, c) in &self.counts {
            writeln!(out, "{k},{c}").expect("writing to a string");
        }
        out
    }

    pub fn tv_to(&self, reference: &BTreeMap<i64, f64>) -> f64 {
        tv_distance(&self.pmf(), reference)
    }
}

/// Half the L1 distance between two distributions on the integers.
pub fn tv_distance(p: &BTreeMap<i64, f64>, q: &BTreeMap<i64, f64>) -> f64 {
    let mut sum = 0.0;
    for (k, a) in p {
        sum += (a - q.get(k).copied().unwrap_or(0.0)).abs();
    }
    for (k, b) in q {
        if !p.contains_key(k) {
            sum += b.abs();
        }
    }
    sum / 2.0
}

/// Histogram of a statistic over runs.
///
/// Conditioned runs are kept only if they are excursions, and the statistic is
/// read from the floored reach set. Unconditioned runs all count, and the
/// statistic is read from the unconstrained reach set.
pub fn statistic_histograms(cfg: &SimConfig, statistic: Statistic, conditioned: bool) -> Result<Histogram, SimError> {
    let counts = match ProgressionModel::new(&cfg.steps) {
        Ok(m) => tally(cfg, &m, statistic, conditioned),
        Err(_) => tally(cfg, &Sets(&cfg.steps), statistic, conditioned),
    };
    let accepted: u64 = counts.values().sum();
    if accepted == 0 {
        return Err(SimError::NoAccepted { runs: cfg.runs });
    }
    Ok(Histogram { statistic, conditioned, counts, accepted, runs: cfg.runs })
}

fn tally<T: Track>(cfg: &SimConfig, track: &T, statistic: Statistic, conditioned: bool) -> BTreeMap<i64, u64> {
    let runner = Runner::new(cfg, track);
    let goal = if conditioned { Goal::Excursion } else { Goal::Free };
    (0..cfg.runs)
        .into_par_iter()
        .filter_map(|r| {
            let end = runner.run(r, goal)?;
            if conditioned && !track.contains_zero(&end.pos) {
                return None;
            }
            Some(match statistic {
                Statistic::FinalMax => track.bounds(&end.pos).1,
                Statistic::ReturnsToZero => i64::from(end.returns),
            })
        })
        .fold(BTreeMap::new, |mut m: BTreeMap<i64, u64>, k| {
            *m.entry(k).or_default() += 1;
            m
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, c) in b {
                *a.entry(k).or_default() += c;
            }
            a
        })
}
