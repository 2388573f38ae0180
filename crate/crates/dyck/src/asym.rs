use std::f64::consts::PI;

use num_traits::{One, ToPrimitive, Zero};
use nwalk_series::Q;
use nwalk_walk::Class;

use crate::{DyckError, DyckWeights};

/// Two-term asymptotic count of unweighted Dyck walks of length `n` in `class`.
pub fn asymptotic_eval(class: Class, n: u32) -> f64 {
    let nf = f64::from(n);
    let even = if n.is_multiple_of(2) { 1.0 } else { 0.0 };
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let three = 3f64.powi(n as i32);
    let eight = 8f64.powf(nf / 2.0);
    let sqrt2 = 2f64.sqrt();
    match class {
        Class::Walk => three,
        Class::Bridge => even * (three - 2.0 * sqrt2 / PI.sqrt() * eight / nf.sqrt()),
        Class::Meander => three / 2.0 + (3.0 * sqrt2 * (1.0 + sign) + 4.0 * (1.0 - sign)) / PI.sqrt() * eight / nf.powf(1.5),
        Class::Excursion => even * (three / 4.0 + 4.0 * sqrt2 * eight / (PI * nf.powi(3)).sqrt()),
    }
}

/// Which of the four excursion-probability regimes applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExcursionRegime {
    /// Both biased steps below 1/2: a positive limit.
    Constant,
    /// One of them exactly 1/2: decay like `n^{-1/2}`.
    HalfDecay,
    /// Both exactly 1/2: decay like `n^{-3/2}`.
    ThreeHalvesDecay,
    /// One above 1/2: exponential decay.
    Exponential,
}

fn half() -> Q {
    Q::new(1.into(), 2.into())
}

/// Asymptotic probability that a random walk of length `2n` is an excursion.
///
/// `p_{-1}` and `p_1` play symmetric roles, so the larger is taken as `b`.
pub fn excursion_prob_asym(w: &DyckWeights, n: u32) -> Result<(ExcursionRegime, f64), DyckError> {
    w.require_probability()?;
    let (a, b) = if w.p_p1 <= w.p_m1 { (&w.p_p1, &w.p_m1) } else { (&w.p_m1, &w.p_p1) };
    let f = |q: &Q| q.to_f64().expect("finite");
    let (af, bf) = (f(a), f(b));
    let nf = f64::from(n);
    let h = half();
    if *b < h {
        return Ok((ExcursionRegime::Constant, (1.0 - 2.0 * af) * (1.0 - 2.0 * bf) / ((1.0 - af) * (1.0 - bf))));
    }
    if *b == h && *a < h {
        return Ok((ExcursionRegime::HalfDecay, (1.0 - 2.0 * af) / ((1.0 - af) * (PI * nf).sqrt())));
    }
    if *a == h && *b == h {
        return Ok((ExcursionRegime::ThreeHalvesDecay, 1.0 / (PI * nf.powi(3)).sqrt()));
    }
    let sum = a + b;
    if *a < h && h < *b && *b < Q::one() && sum <= Q::one() {
        let gamma = if sum.is_one() {
            1.0 / PI.sqrt()
        } else {
            let pb = f(&w.p_m1p1);
            let root = (pb * bf * (1.0 - bf) * (bf - af)).sqrt();
            2.0 * bf / PI.sqrt() * (root - bf * (1.0 - bf) + (1.0 - af) / 2.0) / ((1.0 - af) * (2.0 * bf - 1.0).powi(2))
        };
        let base = 4.0 * bf * (1.0 - bf);
        return Ok((ExcursionRegime::Exponential, gamma * base.powf(nf) / nf.powf(1.5)));
    }
    Err(DyckError::Regime(format!("no excursion regime for p_-1 = {}, p_1 = {}", w.p_m1, w.p_p1)))
}

/// `(mean, variance)` of the final maximum, in units of 2, for zero `x`-drift.
pub fn maxlaw_moments(w: &DyckWeights, n: u32) -> Result<(f64, f64), DyckError> {
    w.require_probability()?;
    if w.p_p1 != half() || w.p_m1 == half() {
        return Err(DyckError::Regime("moments need p_1 = 1/2 and p_-1 != 1/2".into()));
    }
    if w.p_m1p1.is_zero() {
        return Err(DyckError::Regime("p_-1,1 must be nonzero".into()));
    }
    let p = w.p_m1.to_f64().expect("finite");
    let nf = f64::from(n);
    let mu = 1.0 - 2.0 * p;
    Ok((mu * nf - p * (PI * nf).sqrt(), p * (2.0 - p * PI) * nf))
}
