use num_traits::{One, Zero};
use nwalk_series::{algebraic_residual, BivariateSeries, LaurentPoly, Selector, Series, Q};
use nwalk_walk::{count_by_dp, Class, NStepSet, ProgressionModel, StateMode};

use crate::MotzkinError;

fn int(n: i64) -> Q {
    Q::from_integer(n.into())
}

fn poly(terms: &[(i64, i64, i64)]) -> LaurentPoly {
    LaurentPoly::from_terms(terms.iter().map(|&(i, j, c)| (i, j, int(c))))
}

pub type Matrix2 = [[LaurentPoly; 2]; 2];

/// Interaction of the two meander types with the steps: general (`A`),
/// on the floor (`B`) and at the smallest set of each type (`C`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionMatrices {
    pub a: Matrix2,
    pub b: Matrix2,
    pub c: Matrix2,
}

pub fn transition_matrices() -> TransitionMatrices {
    let z = LaurentPoly::zero;
    TransitionMatrices {
        a: [
            [poly(&[(-1, -1, 1), (0, 0, 1), (1, 1, 1), (-1, 1, 1)]), z()],
            [poly(&[(-1, -1, 1), (0, 0, 1), (-1, 0, 1)]), poly(&[(-1, -1, 1), (0, 0, 1), (1, 1, 1), (-1, 0, 1), (0, 1, 1), (-1, 1, 2)])],
        ],
        b: [
            [poly(&[(1, -1, 1), (0, 0, 1), (1, 1, 2)]), z()],
            [poly(&[(0, -1, 1), (0, 0, 2)]), poly(&[(0, -1, 1), (0, 0, 2), (1, 1, 1), (0, 1, 3)])],
        ],
        c: [
            [poly(&[(0, 0, 2), (1, 1, 2)]), poly(&[(0, 0, 1)])],
            [poly(&[(0, 0, 2)]), poly(&[(1, 1, 1), (0, 0, 2), (0, 1, 3)])],
        ],
    }
}

fn apply(m: &Matrix2, v: &[LaurentPoly; 2]) -> [LaurentPoly; 2] {
    [m[0][0].mul(&v[0]).add(&m[0][1].mul(&v[1])), m[1][0].mul(&v[0]).add(&m[1][1].mul(&v[1]))]
}

/// `(M⁺_II, y⁻¹ M⁺_I)` from the vector functional equation.
pub fn meander_vector_series(order: usize) -> [BivariateSeries; 2] {
    let m = transition_matrices();
    let mut out: [Vec<LaurentPoly>; 2] = [Vec::with_capacity(order), Vec::with_capacity(order)];
    let mut v = [LaurentPoly::constant(Q::one()), LaurentPoly::zero()];
    for _ in 0..order {
        out[0].push(v[0].clone());
        out[1].push(v[1].clone());
        let floor: [LaurentPoly; 2] = [v[0].extract(&Selector::XEq(0)), v[1].extract(&Selector::XEq(0))];
        let corner: [LaurentPoly; 2] = [floor[0].extract(&Selector::YEq(0)), floor[1].extract(&Selector::YEq(0))];
        let general = apply(&m.a, &[v[0].sub(&floor[0]), v[1].sub(&floor[1])]);
        let edge = apply(&m.b, &[floor[0].sub(&corner[0]), floor[1].sub(&corner[1])]);
        let low = apply(&m.c, &corner);
        v = [general[0].add(&edge[0]).add(&low[0]), general[1].add(&edge[1]).add(&low[1])];
    }
    let [a, b] = out;
    [BivariateSeries::from_coeffs(a), BivariateSeries::from_coeffs(b)]
}

/// `M⁺(x,y;t) = M⁺_II + y · (y⁻¹ M⁺_I)`.
pub fn meander_series(order: usize) -> BivariateSeries {
    let [two, one] = meander_vector_series(order);
    two.add(&one.mul_poly(&LaurentPoly::monomial(Q::one(), 0, 1)))
}

/// `Σ c x^i y^j` with `x` a series and `y` a nonzero rational.
pub fn eval_at(p: &LaurentPoly, x: &Series, y: &Q) -> Result<Series, MotzkinError> {
    let order = x.order();
    let inv_x = x.inverse()?;
    let mut acc = Series::zero(order);
    for (i, j, c) in p.terms() {
        let base = if i >= 0 { x.pow(i as u32) } else { inv_x.pow((-i) as u32) };
        let yj = if j >= 0 { num_traits::pow(y.clone(), j as usize) } else { Q::one() / num_traits::pow(y.clone(), (-j) as usize) };
        acc = &acc + &base.truncate(order).scale(&(c * yj));
    }
    Ok(acc)
}

/// `1 - t A_{ii}(x, y)` for `i` in `{0, 1}`.
pub fn kernel_entry(i: usize, x: &Series, y: &Q) -> Result<Series, MotzkinError> {
    let a = &transition_matrices().a[i][i];
    let order = x.order();
    let ta = &Series::t(order + 1) * &eval_at(a, x, y)?;
    Ok(&Series::one(order) - &ta.truncate(order))
}

/// `(p(t) - sqrt(d(t))) / (2 t y)`: the power-series branch of a kernel root.
fn branch(p: Vec<Q>, d: Vec<Q>, y: &Q, order: usize) -> Result<Series, MotzkinError> {
    if y.is_zero() {
        return Err(MotzkinError::Series(nwalk_series::SeriesError::PoleAtZero));
    }
    let m = order as i64 + 1;
    let num = &Series::from_coeffs(0, p, m) - &Series::from_coeffs(0, d, m).sqrt()?;
    Ok(num.shift(-1).scale(&(Q::one() / (int(2) * y))).truncate(order as i64))
}

pub fn kernel_roots_x(y: &Q, order: usize) -> Result<(Series, Series), MotzkinError> {
    let y2 = y * y;
    let x1 = branch(vec![Q::one(), -Q::one()], vec![Q::one(), int(-2), int(-3) - int(4) * &y2], y, order)?;
    let x2 = branch(
        vec![Q::one(), -(y + Q::one())],
        vec![Q::one(), int(-2) - int(2) * y, int(-3) - int(2) * y - int(7) * &y2],
        y,
        order,
    )?;
    Ok((x1, x2))
}

/// `Y1 = (t - 1 + sqrt(1 - 2t - 7t²))/(4t)`, `Y2 = (1 - 2t - sqrt(1 - 4t - 12t²))/(8t)`.
pub fn kernel_roots_y(order: usize) -> Result<(Series, Series), MotzkinError> {
    let m = order as i64 + 1;
    let n = order as i64;
    let y1 = &Series::from_ints(&[-1, 1], m) + &Series::from_ints(&[1, -2, -7], m).sqrt()?;
    let y2 = &Series::from_ints(&[1, -2], m) - &Series::from_ints(&[1, -4, -12], m).sqrt()?;
    Ok((
        y1.shift(-1).scale(&Q::new(1.into(), 4.into())).truncate(n),
        y2.shift(-1).scale(&Q::new(1.into(), 8.into())).truncate(n),
    ))
}

/// `(10t - 1 + sqrt((1+2t)(1-6t))) / (8t(1-7t))`.
pub fn meander_closed_form(order: usize) -> Result<Series, MotzkinError> {
    let m = order as i64 + 2;
    let root = Series::from_ints(&[1, -4, -12], m).sqrt()?;
    let num = &Series::from_ints(&[-1, 10], m) + &root;
    Ok(num.div(&Series::from_ints(&[0, 8, -56], m))?.truncate(order as i64))
}

/// Coefficients (of `E^0..E^4`) of the quartic satisfied by the excursion series, to `order` terms.
pub fn excursion_quartic(order: usize) -> Vec<Series> {
    let p = |coeffs: &[i64]| Series::from_ints(coeffs, order as i64);
    let a = p(&[1, 2]);
    let b = p(&[-1, 7]);
    let c = p(&[-1, 4]);
    let abc = &(&a * &b) * &c;
    let e4 = &p(&[0, 0, 0, 0, 0, 256]) * &(&abc * &abc);
    let e3 = &(&p(&[0, 0, 16]) * &abc) * &p(&[1, -15, 69, -85, -192, 564]);
    let e2 = p(&[-1, 27, -303, 1742, -4624, -864, 36720, -68144, -44448, 197264]);
    let e1 = p(&[2, -45, 375, -1256, 121, 8901, -14436, -12220, 36000]);
    let e0 = p(&[-1, 18, -108, 170, 591, -1901, -456, 4288]);
    vec![e0, e1, e2, e3, e4]
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ClosedFormReport {
    pub order: usize,
    /// First length where the meander closed form and the DP disagree.
    pub meander_first_mismatch: Option<usize>,
    /// Lowest nonzero power of the quartic residual below `order`.
    pub quartic_first_nonzero: Option<i64>,
}

impl ClosedFormReport {
    pub fn passed(&self) -> bool {
        self.meander_first_mismatch.is_none() && self.quartic_first_nonzero.is_none()
    }
}

pub fn closed_form_checks(order: usize) -> Result<ClosedFormReport, MotzkinError> {
    let steps = NStepSet::motzkin_unweighted();
    let model = ProgressionModel::new(&steps)?;
    let mode = StateMode::Compressed(&model);
    let meanders = count_by_dp(&steps, order - 1, Class::Meander, mode)?;
    let closed = meander_closed_form(order)?;
    let meander_first_mismatch = (0..order).find(|&n| closed.coeff(n as i64) != meanders[n]);
    let exc = count_by_dp(&steps, order - 1, Class::Excursion, mode)?;
    let e = Series::from_coeffs(0, exc, order as i64);
    let residual = algebraic_residual(&excursion_quartic(order), &e).truncate(order as i64);
    let quartic_first_nonzero = (0..order as i64).find(|&n| !residual.coeff(n).is_zero());
    Ok(ClosedFormReport { order, meander_first_mismatch, quartic_first_nonzero })
}
