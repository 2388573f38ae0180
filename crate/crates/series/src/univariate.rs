use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::{Q, SeriesError};

/// A Laurent series in `t` known modulo `t^order`.
///
/// `coeffs[i]` is the coefficient of `t^(val + i)`; the leading coefficient is
/// nonzero unless the series is zero to the known precision, in which case
/// `val == order` and `coeffs` is empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    val: i64,
    coeffs: Vec<Q>,
    order: i64,
}

impl Series {
    pub fn zero(order: i64) -> Self {
        Series { val: order, coeffs: Vec::new(), order }
    }

    /// Coefficients of `t^val, t^(val+1), …`, truncated at `order`.
    pub fn from_coeffs(val: i64, coeffs: Vec<Q>, order: i64) -> Self {
        let keep = (order - val).max(0) as usize;
        let mut coeffs = coeffs;
        coeffs.truncate(keep);
        let mut s = Series { val, coeffs, order };
        s.normalize();
        s
    }

    pub fn from_ints(coeffs: &[i64], order: i64) -> Self {
        Series::from_coeffs(0, coeffs.iter().map(|&c| Q::from_integer(c.into())).collect(), order)
    }

    pub fn constant(c: Q, order: i64) -> Self {
        Series::from_coeffs(0, vec![c], order)
    }

    pub fn one(order: i64) -> Self {
        Series::constant(Q::one(), order)
    }

    pub fn monomial(c: Q, exp: i64, order: i64) -> Self {
        Series::from_coeffs(exp, vec![c], order)
    }

    /// The series `t`.
    pub fn t(order: i64) -> Self {
        Series::monomial(Q::one(), 1, order)
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            Some(0) => {}
            Some(p) => {
                self.coeffs.drain(..p);
                self.val += p as i64;
            }
            None => {
                self.coeffs.clear();
                self.val = self.order;
            }
        }
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    /// Exponent of the first nonzero term, `None` for the zero series.
    pub fn valuation(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.val)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `t^n`. Panics when `n` is beyond the known precision.
    pub fn coeff(&self, n: i64) -> Q {
        assert!(n < self.order, "coefficient t^{n} requested from a series known mod t^{}", self.order);
        if n < self.val {
            return Q::zero();
        }
        self.coeffs.get((n - self.val) as usize).cloned().unwrap_or_else(Q::zero)
    }

    /// Coefficients of `t^from .. t^to` (exclusive).
    pub fn coeffs_range(&self, from: i64, to: i64) -> Vec<Q> {
        (from..to).map(|n| self.coeff(n)).collect()
    }

    pub fn truncate(&self, order: i64) -> Series {
        let order = order.min(self.order);
        Series::from_coeffs(self.val, self.coeffs.clone(), order)
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> Series {
        Series { val: self.val + k, coeffs: self.coeffs.clone(), order: self.order + k }
    }

    pub fn scale(&self, c: &Q) -> Series {
        Series::from_coeffs(self.val, self.coeffs.iter().map(|x| x * c).collect(), self.order)
    }

    fn lead_val(&self) -> i64 {
        self.val
    }

    pub fn inverse(&self) -> Result<Series, SeriesError> {
        if self.is_zero() {
            return Err(SeriesError::DivisionByZero);
        }
        let v = self.val;
        let prec = (self.order - v) as usize;
        let c0_inv = Q::one() / &self.coeffs[0];
        let mut out: Vec<Q> = Vec::with_capacity(prec);
        out.push(c0_inv.clone());
        for n in 1..prec {
            let mut acc = Q::zero();
            for i in 1..=n.min(self.coeffs.len() - 1) {
                acc += &self.coeffs[i] * &out[n - i];
            }
            out.push(-acc * &c0_inv);
        }
        Ok(Series::from_coeffs(-v, out, self.order - 2 * v))
    }

    pub fn div(&self, other: &Series) -> Result<Series, SeriesError> {
        Ok(self * &other.inverse()?)
    }

    /// Square root with leading coefficient the positive rational root.
    ///
    /// Solves `s·s = a` coefficient by coefficient, which is the fixed point the
    /// Newton step `s ← (s + a/s)/2` converges to.
    pub fn sqrt(&self) -> Result<Series, SeriesError> {
        if self.is_zero() {
            return Ok(Series::zero(self.order / 2));
        }
        if self.val % 2 != 0 {
            return Err(SeriesError::OddValuation(self.val));
        }
        let s0 = rational_sqrt(&self.coeffs[0]).ok_or_else(|| SeriesError::NotASquare(self.coeffs[0].to_string()))?;
        let prec = (self.order - self.val) as usize;
        let two_s0_inv = Q::one() / (&s0 + &s0);
        let mut out: Vec<Q> = Vec::with_capacity(prec);
        out.push(s0);
        for n in 1..prec {
            let mut acc = self.coeffs.get(n).cloned().unwrap_or_else(Q::zero);
            for i in 1..n {
                acc -= &out[i] * &out[n - i];
            }
            out.push(acc * &two_s0_inv);
        }
        let half = self.val / 2;
        Ok(Series::from_coeffs(half, out, self.order - half))
    }

    pub fn pow(&self, e: u32) -> Series {
        let mut acc = Series::one(i64::MAX / 4);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Float approximation of the coefficient of `t^n`.
    pub fn coeff_f64(&self, n: i64) -> f64 {
        q_to_f64(&self.coeff(n))
    }

    pub fn to_json(&self) -> SeriesJson {
        SeriesJson {
            valuation: self.val.min(self.order),
            order: self.order,
            coefficients: self.coeffs.iter().map(q_to_string).collect(),
        }
    }

    pub fn from_json(j: &SeriesJson) -> Result<Series, SeriesError> {
        let coeffs = j.coefficients.iter().map(|c| parse_q(c)).collect::<Result<Vec<_>, _>>()?;
        Ok(Series::from_coeffs(j.valuation, coeffs, j.order))
    }
}

/// JSON shape: `{valuation, order, coefficients: ["p/q", …]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub valuation: i64,
    pub order: i64,
    pub coefficients: Vec<String>,
}

pub fn q_to_string(q: &Q) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_q(s: &str) -> Result<Q, SeriesError> {
    let bad = || SeriesError::Parse(s.to_string());
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(p, q))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn q_to_f64(q: &Q) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or_else(|| {
        // Huge numerator and denominator: scale both down first.
        let shift = q.numer().bits().max(q.denom().bits()).saturating_sub(900);
        let n = (q.numer() >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (q.denom() >> shift).to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

fn big_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

fn rational_sqrt(q: &Q) -> Option<Q> {
    Some(Q::new(big_sqrt_exact(q.numer())?, big_sqrt_exact(q.denom())?))
}

/// `Σ poly[i]·E^i`, evaluated to the available precision.
pub fn algebraic_residual(poly: &[Series], e: &Series) -> Series {
    let mut acc = Series::zero(i64::MAX / 4);
    for c in poly.iter().rev() {
        acc = &(&acc * e) + c;
    }
    acc
}

impl Add for &Series {
    type Output = Series;

    fn add(self, rhs: &Series) -> Series {
        let order = self.order.min(rhs.order);
        let val = self.val.min(rhs.val).min(order);
        let len = (order - val).max(0) as usize;
        let mut out = vec![Q::zero(); len];
        for src in [self, rhs] {
            for (i, c) in src.coeffs.iter().enumerate() {
                let idx = src.val + i as i64 - val;
                if (idx as usize) < len {
                    out[idx as usize] += c;
                }
            }
        }
        Series::from_coeffs(val, out, order)
    }
}

impl Neg for &Series {
    type Output = Series;

    fn neg(self) -> Series {
        Series { val: self.val, coeffs: self.coeffs.iter().map(|c| -c).collect(), order: self.order }
    }
}

impl Sub for &Series {
    type Output = Series;

    fn sub(self, rhs: &Series) -> Series {
        self + &(-rhs)
    }
}

impl Mul for &Series {
    type Output = Series;

    fn mul(self, rhs: &Series) -> Series {
        let order = (self.order + rhs.lead_val()).min(rhs.order + self.lead_val());
        let val = self.val + rhs.val;
        if self.is_zero() || rhs.is_zero() || val >= order {
            return Series::zero(order);
        }
        let len = (order - val) as usize;
        let mut out = vec![Q::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(len - i) {
                out[i + j] += a * b;
            }
        }
        Series::from_coeffs(val, out, order)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Series {
            type Output = Series;
            fn $m(self, rhs: Series) -> Series {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Series> for Series {
            type Output = Series;
            fn $m(self, rhs: &Series) -> Series {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.val + i as i64;
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let ms = q_to_string(&mag);
            match e {
                0 => write!(f, "{ms}")?,
                1 => write!(f, "{ms}*t")?,
                _ => write!(f, "{ms}*t^{e}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.order)
    }
}
