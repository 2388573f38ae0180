use num_traits::One;
use nwalk_series::{BivariateSeries, LaurentPoly, Selector, Series, Q};

fn poly(terms: &[(i64, i64, i64)]) -> LaurentPoly {
    LaurentPoly::from_terms(terms.iter().map(|&(i, j, c)| (i, j, Q::from_integer(c.into()))))
}

/// `(M_I, M_II, M)` with `x` marking the minimum and `y` the maximum of the reach set.
#[derive(Clone, Debug)]
pub struct WalkSeriesByType {
    pub type_one: BivariateSeries,
    pub type_two: BivariateSeries,
    pub total: BivariateSeries,
}

impl WalkSeriesByType {
    /// The three series at `x = y = 1`.
    pub fn totals(&self) -> (Series, Series, Series) {
        (self.type_one.totals(), self.type_two.totals(), self.total.totals())
    }
}

/// Solves the two linear recurrences for the type I and type II walk series.
pub fn walk_series_by_type(order: usize) -> WalkSeriesByType {
    // type II -> type II: {-1}, {0}, {1}, {-1,1}
    let two_two = poly(&[(-1, -1, 1), (0, 0, 1), (1, 1, 1), (-1, 1, 1)]);
    // type II -> type I: {-1,0}, {0,1}, {-1,0,1}
    let two_one = poly(&[(-1, 0, 1), (0, 1, 1), (-1, 1, 1)]);
    // type I -> type I: every step
    let one_one = poly(&[(-1, -1, 1), (0, 0, 1), (1, 1, 1), (-1, 0, 1), (0, 1, 1), (-1, 1, 2)]);
    let mut m1 = Vec::with_capacity(order);
    let mut m2 = Vec::with_capacity(order);
    for n in 0..order {
        if n == 0 {
            m1.push(LaurentPoly::zero());
            m2.push(LaurentPoly::constant(Q::one()));
        } else {
            let next_two = m2[n - 1].mul(&two_two);
            let next_one = m2[n - 1].mul(&two_one).add(&m1[n - 1].mul(&one_one));
            m2.push(next_two);
            m1.push(next_one);
        }
    }
    let type_one = BivariateSeries::from_coeffs(m1);
    let type_two = BivariateSeries::from_coeffs(m2);
    let total = type_one.add(&type_two);
    WalkSeriesByType { type_one, type_two, total }
}

/// `[x^{≤0} y^{≥0}]((M_II(x,y) + M_II(-x,y))/2 + M_I(x,y))` at `x = y = 1`.
pub fn bridge_series_by_extraction(order: usize) -> Series {
    let w = walk_series_by_type(order);
    let half = Q::new(1.into(), 2.into());
    let even = w.type_two.add(&w.type_two.negate_x()).mul_poly(&LaurentPoly::constant(half));
    let inner = even.add(&w.type_one);
    inner.extract_all(&[Selector::XLe(0), Selector::YGe(0)]).totals()
}
