use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::univariate::{q_to_string, Series};
use crate::{Q, SeriesError};

/// Sparse Laurent polynomial in `x` and `y`, keyed by `(x exponent, y exponent)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentPoly {
    terms: BTreeMap<(i64, i64), Q>,
}

/// Coefficient selection on `x`/`y` exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Selector {
    XGt(i64),
    XLe(i64),
    YLt(i64),
    YGe(i64),
    XEq(i64),
    YEq(i64),
    /// `x` exponent congruent to one of `residues` modulo `modulus`.
    XResidue { modulus: i64, residues: Vec<i64> },
    XIn(Vec<i64>),
    XNotIn(Vec<i64>),
    YNotIn(Vec<i64>),
    Single(i64, i64),
}

impl Selector {
    pub fn keeps(&self, i: i64, j: i64) -> bool {
        match self {
            Selector::XGt(c) => i > *c,
            Selector::XLe(c) => i <= *c,
            Selector::YLt(c) => j < *c,
            Selector::YGe(c) => j >= *c,
            Selector::XEq(c) => i == *c,
            Selector::YEq(c) => j == *c,
            Selector::XResidue { modulus, residues } => {
                residues.iter().any(|r| (i - r).rem_euclid(*modulus) == 0)
            }
            Selector::XIn(v) => v.contains(&i),
            Selector::XNotIn(v) => !v.contains(&i),
            Selector::YNotIn(v) => !v.contains(&j),
            Selector::Single(a, b) => i == *a && j == *b,
        }
    }
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn monomial(c: Q, i: i64, j: i64) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(i, j, c);
        p
    }

    pub fn constant(c: Q) -> Self {
        LaurentPoly::monomial(c, 0, 0)
    }

    /// Builds from `(x exponent, y exponent, coefficient)` triples.
    pub fn from_terms<I: IntoIterator<Item = (i64, i64, Q)>>(terms: I) -> Self {
        let mut p = LaurentPoly::zero();
        for (i, j, c) in terms {
            p.add_term(i, j, c);
        }
        p
    }

    pub fn add_term(&mut self, i: i64, j: i64, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((i, j)).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn coeff(&self, i: i64, j: i64) -> Q {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i64, &Q)> {
        self.terms.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of all coefficients, i.e. the value at `x = y = 1`.
    pub fn total(&self) -> Q {
        self.terms.values().fold(Q::zero(), |acc, c| acc + c)
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (i, j, c) in other.terms() {
            out.add_term(i, j, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms().map(|(i, j, v)| (i, j, v * c)))
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (i, j, a) in self.terms() {
            for (k, l, b) in other.terms() {
                out.add_term(i + k, j + l, a * b);
            }
        }
        out
    }

    /// Multiplication by `x^di y^dj`.
    pub fn shift(&self, di: i64, dj: i64) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(&(i, j), c)| ((i + di, j + dj), c.clone())).collect() }
    }

    pub fn extract(&self, sel: &Selector) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().filter(|(&(i, j), _)| sel.keeps(i, j)).map(|(k, c)| (*k, c.clone())).collect() }
    }

    /// The substitution `x → −x`.
    pub fn negate_x(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms().map(|(i, j, c)| (i, j, if i % 2 == 0 { c.clone() } else { -c })))
    }

    pub fn eval(&self, x: &Q, y: &Q) -> Result<Q, SeriesError> {
        let mut acc = Q::zero();
        for (i, j, c) in self.terms() {
            acc += c * qpow(x, i)? * qpow(y, j)?;
        }
        Ok(acc)
    }
}

fn qpow(x: &Q, e: i64) -> Result<Q, SeriesError> {
    if e >= 0 {
        return Ok(num_traits::pow(x.clone(), e as usize));
    }
    if x.is_zero() {
        return Err(SeriesError::PoleAtZero);
    }
    Ok(num_traits::pow(x.recip(), (-e) as usize))
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (i, j, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors = Vec::new();
            if !mag.is_one() || (i == 0 && j == 0) {
                factors.push(q_to_string(&mag));
            }
            for (name, e) in [("x", i), ("y", j)] {
                match e {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// Power series in `t` whose coefficients are Laurent polynomials in `x`, `y`,
/// known for `t^0 .. t^(order-1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariateSeries {
    coeffs: Vec<LaurentPoly>,
}

impl BivariateSeries {
    pub fn zero(order: usize) -> Self {
        BivariateSeries { coeffs: vec![LaurentPoly::zero(); order] }
    }

    pub fn from_coeffs(coeffs: Vec<LaurentPoly>) -> Self {
        BivariateSeries { coeffs }
    }

    pub fn constant(p: LaurentPoly, order: usize) -> Self {
        let mut s = BivariateSeries::zero(order);
        if order > 0 {
            s.coeffs[0] = p;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, n: usize) -> &LaurentPoly {
        &self.coeffs[n]
    }

    pub fn coeff_mut(&mut self, n: usize) -> &mut LaurentPoly {
        &mut self.coeffs[n]
    }

    pub fn add(&self, other: &BivariateSeries) -> BivariateSeries {
        let n = self.order().min(other.order());
        BivariateSeries { coeffs: (0..n).map(|i| self.coeffs[i].add(&other.coeffs[i])).collect() }
    }

    pub fn sub(&self, other: &BivariateSeries) -> BivariateSeries {
        let n = self.order().min(other.order());
        BivariateSeries { coeffs: (0..n).map(|i| self.coeffs[i].sub(&other.coeffs[i])).collect() }
    }

    pub fn mul(&self, other: &BivariateSeries) -> BivariateSeries {
        let n = self.order().min(other.order());
        let mut out = BivariateSeries::zero(n);
        for i in 0..n {
            for j in 0..n - i {
                let prod = self.coeffs[i].mul(&other.coeffs[j]);
                out.coeffs[i + j] = out.coeffs[i + j].add(&prod);
            }
        }
        out
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> BivariateSeries {
        BivariateSeries { coeffs: self.coeffs.iter().map(|c| c.mul(p)).collect() }
    }

    /// Multiplication by `t`, keeping the same order.
    pub fn times_t(&self) -> BivariateSeries {
        let n = self.order();
        let mut coeffs = vec![LaurentPoly::zero()];
        coeffs.extend(self.coeffs.iter().take(n.saturating_sub(1)).cloned());
        coeffs.truncate(n);
        BivariateSeries { coeffs }
    }

    pub fn extract(&self, sel: &Selector) -> BivariateSeries {
        BivariateSeries { coeffs: self.coeffs.iter().map(|c| c.extract(sel)).collect() }
    }

    pub fn extract_all(&self, sels: &[Selector]) -> BivariateSeries {
        sels.iter().fold(self.clone(), |acc, s| acc.extract(s))
    }

    pub fn negate_x(&self) -> BivariateSeries {
        BivariateSeries { coeffs: self.coeffs.iter().map(LaurentPoly::negate_x).collect() }
    }

    pub fn eval(&self, x: &Q, y: &Q) -> Result<Series, SeriesError> {
        let c = self.coeffs.iter().map(|p| p.eval(x, y)).collect::<Result<Vec<_>, _>>()?;
        Ok(Series::from_coeffs(0, c, self.order() as i64))
    }

    /// Value at `x = y = 1`.
    pub fn totals(&self) -> Series {
        Series::from_coeffs(0, self.coeffs.iter().map(LaurentPoly::total).collect(), self.order() as i64)
    }
}
