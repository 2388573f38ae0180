use num_traits::Zero;
use nwalk_series::Q;

use crate::fseries;
use crate::{DyckError, DyckWeights};

/// Limit law of the final maximum of a random excursion when `delta_y < 0`.
#[derive(Clone, Debug)]
pub struct MaxLaw {
    /// `pmf[k]`: probability that the final maximum is `2k`.
    pub pmf: Vec<f64>,
    /// Mean final maximum (in altitude units) from the closed-form expression.
    pub mean_formula: f64,
    /// Mean final maximum (in altitude units) from the expanded law.
    pub mean_series: f64,
}

struct OmegaParts {
    /// `q(u) = p_{-1} + p_{-1,1} u` with `u = y²`.
    q: [f64; 2],
    /// `Z(u) = 1/X(y, r_1)²` as a power series in `u`.
    z: Vec<f64>,
    q1: f64,
    z1: f64,
}

/// Terms kept internally so the mean is insensitive to truncation.
const INTERNAL_TERMS: usize = 4000;

fn omega_parts(w: &DyckWeights, terms: usize) -> OmegaParts {
    let (pm, pp, pb) = w.floats();
    let r2 = 1.0 / (4.0 * pm * (1.0 - pm));
    let q = [pm, pb];
    // 1/X = y (1 + sqrt(D)) / (2 r q(u)), D(u) = 1 - 4 p_1 r² q(u)
    let d = [1.0 - 4.0 * pp * r2 * pm, -4.0 * pp * r2 * pb];
    let root = fseries::sqrt(&d, terms);
    let mut one_plus = root.clone();
    one_plus[0] += 1.0;
    let sq = fseries::mul(&one_plus, &one_plus, terms);
    let inv_q = fseries::inv(&q, terms);
    let inv_q2 = fseries::mul(&inv_q, &inv_q, terms);
    let w_u: Vec<f64> = fseries::mul(&sq, &inv_q2, terms).iter().map(|c| c / (4.0 * r2)).collect();
    let mut z = vec![0.0; terms];
    z[1..].copy_from_slice(&w_u[..terms - 1]);
    let d1 = d[0] + d[1];
    let q1 = pm + pb;
    let z1 = (1.0 + d1.max(0.0).sqrt()).powi(2) / (4.0 * r2 * q1 * q1);
    OmegaParts { q: q.to_vec().try_into().expect("two terms"), z, q1, z1 }
}

fn check_discrete_regime(w: &DyckWeights) -> Result<(), DyckError> {
    w.require_probability()?;
    if w.p_m1p1.is_zero() {
        return Err(DyckError::Regime("the law needs p_-1,1 != 0".into()));
    }
    if w.p_m1 <= Q::new(1.into(), 2.into()) {
        return Err(DyckError::Regime(format!("discrete law needs delta_y < 0, i.e. p_-1 > 1/2 (got {})", w.p_m1)));
    }
    Ok(())
}

/// `ω(y) = [q(1)/q(y)] · [X(y)²/X(1)²] · [(1 - X(1)²)/(1 - X(y)²)]` at `t = r_1`,
/// expanded in `y²`.
fn omega_coefficients(w: &DyckWeights, terms: usize) -> Vec<f64> {
    let p = omega_parts(w, terms);
    // ω(u) = q(1)(Z(1) - 1) / (q(u)(Z(u) - 1))
    let mut zm1 = p.z.clone();
    zm1[0] -= 1.0;
    let den = fseries::mul(&p.q, &zm1, terms);
    let c = p.q1 * (p.z1 - 1.0);
    fseries::inv(&den, terms).iter().map(|x| x * c).collect()
}

fn mean_formula(w: &DyckWeights) -> f64 {
    let (pm, pp, pb) = w.floats();
    let a = 2.0 * (1.0 - pm) / (2.0 * pm - 1.0);
    let b = 2.0 * (2.0 * pm - pp) / ((2.0 * pm - 1.0) * (1.0 - pp));
    a + b * (pm * pb * (1.0 - pm) / (pm - pp)).sqrt()
}

pub fn maxlaw_discrete_pmf(w: &DyckWeights, k_max: usize) -> Result<MaxLaw, DyckError> {
    check_discrete_regime(w)?;
    let all = omega_coefficients(w, INTERNAL_TERMS.max(k_max + 1));
    let mean_series = all.iter().enumerate().map(|(k, c)| 2.0 * k as f64 * c).sum();
    Ok(MaxLaw { pmf: all[..=k_max].to_vec(), mean_formula: mean_formula(w), mean_series })
}

/// The variant with `(1 - X(y)²)/(1 - X(1)²)` in place of its reciprocal,
/// as a Laurent series in `y²`: `(lowest power, coefficients)`.
pub fn maxlaw_reciprocal_variant(w: &DyckWeights, terms: usize) -> Result<(i64, Vec<f64>), DyckError> {
    check_discrete_regime(w)?;
    let p = omega_parts(w, terms + 2);
    // q(1)/q(u) · Z(1)²(Z(u) - 1) / (Z(u)²(Z(1) - 1)), with Z(u) = u·W(u)
    let wu: Vec<f64> = p.z[1..].to_vec();
    let n = terms + 2;
    let mut zm1 = p.z.clone();
    zm1[0] -= 1.0;
    let w2 = fseries::mul(&wu, &wu, n);
    let den = fseries::mul(&w2, &p.q, n);
    let c = p.q1 * p.z1 * p.z1 / (p.z1 - 1.0);
    let coeffs: Vec<f64> = fseries::mul(&zm1, &fseries::inv(&den, n), n).iter().map(|x| x * c).take(terms).collect();
    Ok((-2, coeffs))
}

/// The regime cases of the returns-to-zero law.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReturnsCase {
    /// Both `p_1, p_{-1} < 1/2`: geometric with parameter from `D⁺(0,0;1)`.
    BothBelowHalf,
    /// `p_1 = 1/2 > p_{-1}`.
    UpHalf,
    /// `p_{-1} = 1/2 > p_1`.
    DownHalf,
    /// `p_1 + p_{-1} = 1`: negative binomial.
    NoDoubleStep,
    /// `p_{-1} < 1/2 < p_1`, `p_1 + p_{-1} < 1`.
    UpHeavy,
    /// `p_1 < 1/2 < p_{-1}`, `p_1 + p_{-1} < 1`: mixed law.
    DownHeavy,
}

/// `D⁺(0,0;t) = Y(t)/(p_{-1} t)` at a numeric `t` inside the disc of convergence.
pub fn d00_at(w: &DyckWeights, t: f64) -> f64 {
    let (pm, pp, pb) = w.floats();
    let q = pp + pb;
    if pm == 0.0 {
        return 1.0;
    }
    let disc = (1.0 - 4.0 * pm * q * t * t).max(0.0);
    if q == 0.0 {
        return 1.0;
    }
    (1.0 - disc.sqrt()) / (2.0 * q * t) / (pm * t)
}

fn x_at(w: &DyckWeights, t: f64) -> f64 {
    let (pm, pp, pb) = w.floats();
    let qy = pm + pb;
    if pp == 0.0 {
        return t * qy;
    }
    (1.0 - (1.0 - 4.0 * pp * qy * t * t).max(0.0).sqrt()) / (2.0 * pp * t)
}

fn returns_case(w: &DyckWeights) -> Result<ReturnsCase, DyckError> {
    w.require_probability()?;
    let h = Q::new(1.into(), 2.into());
    let one = Q::from_integer(1.into());
    let (a, b) = (&w.p_p1, &w.p_m1);
    let sum = a + b;
    let cands = [
        (ReturnsCase::BothBelowHalf, *a < h && *b < h),
        (ReturnsCase::UpHalf, *b < h && *a == h),
        (ReturnsCase::DownHalf, *a < h && *b == h),
        (ReturnsCase::NoDoubleStep, sum == one),
        (ReturnsCase::UpHeavy, *b < h && h < *a && *a < one && sum < one),
        (ReturnsCase::DownHeavy, *a < h && h < *b && *b < one && sum < one),
    ];
    let hits: Vec<ReturnsCase> = cands.iter().filter(|(_, ok)| *ok).map(|(c, _)| *c).collect();
    match hits.as_slice() {
        [c] => Ok(*c),
        [] => Err(DyckError::Regime(format!("no returns law for p_-1 = {}, p_1 = {}", w.p_m1, w.p_p1))),
        many => Err(DyckError::Regime(format!("weights match several returns laws: {many:?}"))),
    }
}

/// Limit law of the number of returns to `{0}` of a random excursion.
pub fn returns_pmf(w: &DyckWeights, k_max: usize) -> Result<(ReturnsCase, Vec<f64>), DyckError> {
    let case = returns_case(w)?;
    let (pm, pp, _) = w.floats();
    let geometric = |d: f64| -> Vec<f64> { (0..=k_max).map(|k| (1.0 / d) * (1.0 - 1.0 / d).powi(k as i32)).collect() };
    let pmf = match case {
        ReturnsCase::BothBelowHalf => geometric(d00_at(w, 1.0)),
        ReturnsCase::UpHalf => (0..=k_max).map(|k| (1.0 - pm) * pm.powi(k as i32)).collect(),
        ReturnsCase::DownHalf => (0..=k_max).map(|k| 0.5f64.powi(k as i32 + 1)).collect(),
        ReturnsCase::NoDoubleStep => (0..=k_max).map(|k| k as f64 * 0.5f64.powi(k as i32 + 1)).collect(),
        ReturnsCase::UpHeavy => geometric(d00_at(w, (1.0 / (4.0 * pp * (1.0 - pp))).sqrt())),
        ReturnsCase::DownHeavy => {
            let eta = down_heavy_eta(w);
            (0..=k_max).map(|k| (1.0 + (k as f64 - 1.0) * eta) * 0.5f64.powi(k as i32 + 1)).collect()
        }
    };
    Ok((case, pmf))
}

/// `η = 1 - 1/(X(1,t)·Y(t))` at `t² = 1/(4 p_{-1}(1 - p_{-1}))`.
///
/// At that point `D⁺(0,0) = 2/(1+s)` with `s = sqrt(1 - t²/ρ)`, while `X(1,t)`
/// is analytic, which fixes the law `(1 + (k-1)η)/2^{k+1}`.
pub fn down_heavy_eta(w: &DyckWeights) -> f64 {
    let (pm, _, _) = w.floats();
    let t = (1.0 / (4.0 * pm * (1.0 - pm))).sqrt();
    let y = d00_at(w, t) * pm * t;
    1.0 - 1.0 / (x_at(w, t) * y)
}

/// The `η` expression and law `(1 + η^{k-1})/2^{k+1}` in the form first stated
/// for this regime, kept for comparison.
pub fn down_heavy_first_form(w: &DyckWeights, k_max: usize) -> Vec<f64> {
    let (pm, pp, _) = w.floats();
    let eta = (pm * (pm - pp) - (pm * (1.0 - pm) * (1.0 - pp - pm) * (pm - pp)).sqrt()) / (pm * (1.0 - pp));
    (0..=k_max).map(|k| (1.0 + eta.powi(k as i32 - 1)) * 0.5f64.powi(k as i32 + 1)).collect()
}
