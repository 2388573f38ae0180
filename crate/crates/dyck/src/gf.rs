use num_traits::{One, Zero};
use nwalk_series::{BivariateSeries, LaurentPoly, Series, SeriesError, Q};

use crate::{minmax_polynomial, DyckError, DyckWeights};

fn int(n: i64) -> Q {
    Q::from_integer(n.into())
}

/// `D(x,y;t) = 1/(1 - tS(x,y))`, truncated to `order` terms.
pub fn walk_series(w: &DyckWeights, order: usize) -> BivariateSeries {
    let s = minmax_polynomial(w);
    let mut coeffs = Vec::with_capacity(order);
    if order > 0 {
        coeffs.push(LaurentPoly::constant(Q::one()));
    }
    for n in 1..order {
        let next = coeffs[n - 1].mul(&s);
        coeffs.push(next);
    }
    BivariateSeries::from_coeffs(coeffs)
}

/// `K(x,y) = xy(1 - tS(x,y)) = xy - t(p_{-1} + p_1 x²y² + p_{-1,1} y²)` as a series in `t`.
pub fn kernel(w: &DyckWeights, x: &Series, y: &Series) -> Series {
    let order = x.order().min(y.order());
    let xy = x * y;
    let y2 = y * y;
    let inner = &(&Series::constant(w.p_m1.clone(), order) + &(&xy * &xy).scale(&w.p_p1)) + &y2.scale(&w.p_m1p1);
    &xy - &(&Series::t(order) * &inner)
}

/// `Y(t)`: the power-series root of `K(1, y) = 0`.
pub fn y_root(w: &DyckWeights, order: usize) -> Result<Series, DyckError> {
    let n = order as i64;
    let q = w.q();
    if q.is_zero() {
        return Ok(Series::monomial(w.p_m1.clone(), 1, n));
    }
    // (1 - sqrt(1 - 4 p_{-1} q t²)) / (2 q t)
    let disc = Series::from_coeffs(0, vec![Q::one(), Q::zero(), -int(4) * &w.p_m1 * &q], n + 1);
    let num = &Series::one(n + 1) - &disc.sqrt()?;
    Ok(num.shift(-1).scale(&(Q::one() / (int(2) * q))).truncate(n))
}

/// `q(y) = p_{-1} + p_{-1,1} y²`.
fn q_of(w: &DyckWeights, y: &Q) -> Q {
    &w.p_m1 + &w.p_m1p1 * y * y
}

/// `X(y,t)`: the power-series root in `x` of `K(x, y) = 0`, at a nonzero rational `y`.
pub fn x_root(w: &DyckWeights, y: &Q, order: usize) -> Result<Series, DyckError> {
    if y.is_zero() {
        return Err(DyckError::Series(SeriesError::PoleAtZero));
    }
    let n = order as i64;
    let qy = q_of(w, y);
    if w.p_p1.is_zero() {
        return Ok(Series::monomial(qy / y, 1, n));
    }
    let disc = Series::from_coeffs(0, vec![Q::one(), Q::zero(), -int(4) * &w.p_p1 * &qy], n + 1);
    let num = &Series::one(n + 1) - &disc.sqrt()?;
    Ok(num.shift(-1).scale(&(Q::one() / (int(2) * &w.p_p1 * y))).truncate(n))
}

/// Weight of meanders whose floored reach set ends as `{0}`.
pub fn d00(w: &DyckWeights, order: usize) -> Result<Series, DyckError> {
    if w.p_m1.is_zero() {
        return Ok(Series::one(order as i64));
    }
    let y = y_root(w, order + 1)?;
    Ok(y.shift(-1).scale(&(Q::one() / &w.p_m1)).truncate(order as i64))
}

/// `D⁺(x, y; t)`: meanders with `x` marking the floored minimum and `y` the maximum.
///
/// Solves `K(x,y)·D⁺(x,y) = xy - t q(y)(1 - x²) D⁺(0,y) - t p_{-1} x² D⁺(0,0)` by
/// cancelling the kernel at `x = X(y)`. Valid for every nonnegative weight triple.
pub fn meander_gf_series(w: &DyckWeights, x: &Q, y: &Q, order: usize) -> Result<Series, DyckError> {
    if y.is_zero() {
        // A floored set with maximum 0 is {0}.
        return d00(w, order);
    }
    let n = order as i64;
    let m = order + 2;
    let mm = m as i64;
    let qy = q_of(w, y);
    let t = Series::t(mm);
    let xs = Series::constant(x.clone(), mm);
    let ys = Series::constant(y.clone(), mm);
    if qy.is_zero() {
        // only {1} steps carry weight
        let den = &Series::one(mm) - &(&(&t * &xs) * &ys).scale(&w.p_p1);
        return Ok(Series::one(mm).div(&den)?.truncate(n));
    }
    let zero_zero = d00(w, m)?;
    let big_x = x_root(w, y, m)?;
    let x2 = &big_x * &big_x;
    // D⁺(0,y) = (X y - t p_{-1} X² D⁺(0,0)) / (t q(y) (1 - X²))
    let num = &big_x.scale(y) - &(&t * &(&x2 * &zero_zero)).scale(&w.p_m1);
    let zero_y = num.shift(-1).scale(&(Q::one() / &qy)).div(&(&Series::one(mm) - &x2))?;
    if x.is_zero() {
        return Ok(zero_y.truncate(n));
    }
    let x_sq = x * x;
    let rhs = &(&(&xs * &ys) - &(&t * &zero_y).scale(&(&qy * (Q::one() - &x_sq)))) - &(&t * &zero_zero).scale(&(&w.p_m1 * &x_sq));
    Ok(rhs.div(&kernel(w, &xs, &ys))?.truncate(n))
}

/// Closed form `(x - X)/(1 - X²) · (y - xY - XY + xyX)/K(x,y)`, for `p_1 > 0`.
pub fn meander_closed_form(w: &DyckWeights, x: &Q, y: &Q, order: usize) -> Result<Series, DyckError> {
    if w.p_p1.is_zero() || y.is_zero() || q_of(w, y).is_zero() {
        return Err(DyckError::Regime("closed form needs p_1 > 0, y != 0 and q(y) != 0".into()));
    }
    let m = order + 2;
    let mm = m as i64;
    let big_y = y_root(w, m)?;
    let big_x = x_root(w, y, m)?;
    let xs = Series::constant(x.clone(), mm);
    let ys = Series::constant(y.clone(), mm);
    let first = (&xs - &big_x).div(&(&Series::one(mm) - &(&big_x * &big_x)))?;
    let second = &(&(&ys - &(&xs * &big_y)) - &(&big_x * &big_y)) + &(&(&xs * &ys) * &big_x);
    Ok((&first * &second).div(&kernel(w, &xs, &ys))?.truncate(order as i64))
}

/// `(1 - 6t²) / ((1 - 9t²) sqrt(1 - 8t²))`: unweighted bridges.
pub fn bridge_gf_series_unweighted(order: usize) -> Result<Series, DyckError> {
    let n = order as i64;
    let num = Series::from_ints(&[1, 0, -6], n);
    let den = &Series::from_ints(&[1, 0, -9], n) * &Series::from_ints(&[1, 0, -8], n).sqrt()?;
    Ok(num.div(&den)?)
}

/// Unweighted closed forms `(D⁺(1,1), D⁺(0,1), D⁺(0,0))` for the
/// all-ones weights.
pub fn unweighted_closed_forms(order: usize) -> Result<(Series, Series, Series), DyckError> {
    let n = order as i64;
    let m = n + 4;
    let root = Series::from_ints(&[1, 0, -8], m).sqrt()?;
    // -(1 - 4t - root) / (4t(1 - 3t))
    let meander_num = &root - &Series::from_ints(&[1, -4], m);
    let meanders = meander_num.div(&Series::from_ints(&[0, 4, -12], m))?;
    // (1 - 8t² - (1 - 12t²) root) / (8t²(1 - 9t²))
    let exc_num = &Series::from_ints(&[1, 0, -8], m) - &(&Series::from_ints(&[1, 0, -12], m) * &root);
    let excursions = exc_num.div(&Series::from_ints(&[0, 0, 8, 0, -72], m))?;
    // (1 - root) / (4t²)
    let zero = (&Series::one(m) - &root).div(&Series::from_ints(&[0, 0, 4], m))?;
    Ok((meanders.truncate(n), excursions.truncate(n), zero.truncate(n)))
}
