use num_traits::{One, ToPrimitive, Zero};
use nwalk_series::{LaurentPoly, Q};
use nwalk_sumset::IntSet;
use nwalk_walk::NStepSet;

use crate::DyckError;

/// Weights of the steps `{-1}`, `{1}`, `{-1,1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DyckWeights {
    pub p_m1: Q,
    pub p_p1: Q,
    pub p_m1p1: Q,
}

/// Expected change of the minimum (`delta_x`) and maximum (`delta_y`) per step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DriftVector {
    pub delta_x: Q,
    pub delta_y: Q,
}

impl DyckWeights {
    pub fn new(p_m1: Q, p_p1: Q, p_m1p1: Q) -> Result<Self, DyckError> {
        if [&p_m1, &p_p1, &p_m1p1].iter().any(|p| **p < Q::zero()) {
            return Err(DyckError::Weights("weights must be nonnegative".into()));
        }
        Ok(DyckWeights { p_m1, p_p1, p_m1p1 })
    }

    pub fn from_ratios(p_m1: (i64, i64), p_p1: (i64, i64), p_m1p1: (i64, i64)) -> Result<Self, DyckError> {
        let q = |(a, b): (i64, i64)| Q::new(a.into(), b.into());
        DyckWeights::new(q(p_m1), q(p_p1), q(p_m1p1))
    }

    pub fn unweighted() -> Self {
        DyckWeights { p_m1: Q::one(), p_p1: Q::one(), p_m1p1: Q::one() }
    }

    /// Each step with probability 1/3.
    pub fn uniform() -> Self {
        let third = Q::new(1.into(), 3.into());
        DyckWeights { p_m1: third.clone(), p_p1: third.clone(), p_m1p1: third }
    }

    /// `p_1 + p_{-1,1}`: weight of the steps whose maximum is 1.
    pub fn q(&self) -> Q {
        &self.p_p1 + &self.p_m1p1
    }

    pub fn total(&self) -> Q {
        &self.p_m1 + &self.p_p1 + &self.p_m1p1
    }

    pub fn require_probability(&self) -> Result<(), DyckError> {
        if self.total().is_one() {
            Ok(())
        } else {
            Err(DyckError::Weights(format!("weights sum to {}, not 1", self.total())))
        }
    }

    pub fn steps(&self) -> NStepSet {
        NStepSet::dyck(self.p_m1.clone(), self.p_p1.clone(), self.p_m1p1.clone()).expect("weights validated")
    }

    /// Swaps `p_{-1}` and `p_1`.
    pub fn swapped(&self) -> DyckWeights {
        DyckWeights { p_m1: self.p_p1.clone(), p_p1: self.p_m1.clone(), p_m1p1: self.p_m1p1.clone() }
    }

    pub(crate) fn floats(&self) -> (f64, f64, f64) {
        let f = |q: &Q| q.to_f64().expect("finite weight");
        (f(&self.p_m1), f(&self.p_p1), f(&self.p_m1p1))
    }
}

pub fn drift_vector(w: &DyckWeights) -> DriftVector {
    DriftVector { delta_x: &w.p_p1 - &w.p_m1p1 - &w.p_m1, delta_y: &w.p_p1 + &w.p_m1p1 - &w.p_m1 }
}

/// `S(x,y) = p_{-1}/(xy) + p_1·xy + p_{-1,1}·y/x`, marking min and max changes.
pub fn minmax_polynomial(w: &DyckWeights) -> LaurentPoly {
    LaurentPoly::from_terms([(-1, -1, w.p_m1.clone()), (1, 1, w.p_p1.clone()), (-1, 1, w.p_m1p1.clone())])
}

/// Each step as its `(min, max)` pair.
pub fn map_to_2d(walk: &[IntSet]) -> Result<Vec<(i64, i64)>, DyckError> {
    walk.iter()
        .map(|s| match (s.min(), s.max()) {
            (Some(a), Some(b)) => Ok((a, b)),
            _ => Err(DyckError::Weights("empty step".into())),
        })
        .collect()
}
