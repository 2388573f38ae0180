//! Exact power series over the rationals, plus bivariate Laurent coefficients
//! for min/max generating functions.

mod bivariate;
mod univariate;

pub use bivariate::{BivariateSeries, LaurentPoly, Selector};
pub use univariate::{algebraic_residual, parse_q, q_to_f64, q_to_string, Series, SeriesJson};

pub type Q = num_rational::BigRational;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SeriesError {
    #[error("division by a series with zero leading part")]
    DivisionByZero,
    #[error("square root of a series with odd valuation {0}")]
    OddValuation(i64),
    #[error("leading coefficient {0} is not a rational square")]
    NotASquare(String),
    #[error("cannot parse {0:?}")]
    Parse(String),
    #[error("negative power of zero")]
    PoleAtZero,
}
