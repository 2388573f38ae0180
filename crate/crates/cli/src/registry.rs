//! Named Motzkin weight patterns (weights 0 or 1) with known counting sequences.
//!
//! Columns follow the step order `{1}, {-1}, {0}, {-1,0}, {0,1}, {-1,1}, {-1,0,1}`.
//! Rows `A1`..`L2` count excursions, `M1`..`M38` count meanders.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use nwalk_series::Q;
use nwalk_sumset::IntSet;
use nwalk_walk::{count_by_dp, Class, NStepSet, ProgressionModel, StateMode, WalkError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Formula {
    /// `C(n, n/2)` for even `n`, 0 for odd `n`.
    CentralBinomialEven,
    /// `C(n, ⌊n/2⌋)`.
    CentralBinomialFloor,
    /// `[x^n] (1 + x + x²)^n`.
    CentralTrinomial,
    /// `[x^(n-1)] (1 + x + x²)^n + [x^n] (1 + x + x²)^n`.
    TrinomialPair,
    /// `2^n - (2n + 1 - (-1)^n)/4`.
    TwoPowMinusQuarter,
    /// `2^n - (1 - (-1)^n)/2`.
    TwoPowMinusParity,
    /// `3^(n+1) - 2^n - δ_{n,0}`.
    ThreePowShifted,
    /// `C(2n+1, n+1)`.
    OddBinomial,
    /// `3^n`.
    ThreePow,
}

fn binom(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

fn trinomial(n: u64, k: i64) -> BigInt {
    // j copies of x², k - 2j copies of x, the rest 1
    if k < 0 {
        return BigInt::zero();
    }
    let k = k as u64;
    (0..=k / 2).filter(|j| j + (k - 2 * j) <= n).map(|j| binom(n, j) * binom(n - j, k - 2 * j)).sum()
}

impl Formula {
    pub fn eval(self, n: u64) -> BigInt {
        let pow = |b: u32, e: u64| BigInt::from(b).pow(e as u32);
        let odd = n % 2 == 1;
        match self {
            Formula::CentralBinomialEven if odd => BigInt::zero(),
            Formula::CentralBinomialEven | Formula::CentralBinomialFloor => binom(n, n / 2),
            Formula::CentralTrinomial => trinomial(n, n as i64),
            Formula::TrinomialPair => trinomial(n, n as i64 - 1) + trinomial(n, n as i64),
            Formula::TwoPowMinusQuarter => pow(2, n) - BigInt::from(if odd { 2 * n + 2 } else { 2 * n }) / 4,
            Formula::TwoPowMinusParity => pow(2, n) - u32::from(odd),
            Formula::ThreePowShifted => pow(3, n + 1) - pow(2, n) - u32::from(n == 0),
            Formula::OddBinomial => binom(2 * n + 1, n + 1),
            Formula::ThreePow => pow(3, n),
        }
    }

    pub fn text(self) -> &'static str {
        match self {
            Formula::CentralBinomialEven => "C(n, n/2) for even n, 0 for odd n",
            Formula::CentralBinomialFloor => "C(n, floor(n/2))",
            Formula::CentralTrinomial => "[x^n] (1+x+x^2)^n",
            Formula::TrinomialPair => "[x^(n-1)] (1+x+x^2)^n + [x^n] (1+x+x^2)^n",
            Formula::TwoPowMinusQuarter => "2^n - (2n+1-(-1)^n)/4",
            Formula::TwoPowMinusParity => "2^n - (1-(-1)^n)/2",
            Formula::ThreePowShifted => "3^(n+1) - 2^n - [n=0]",
            Formula::OddBinomial => "C(2n+1, n+1)",
            Formula::ThreePow => "3^n",
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Row {
    pub id: &'static str,
    pub class: Class,
    pub weights: [u8; 7],
    pub oeis: &'static str,
    pub formula: Option<Formula>,
}

impl Row {
    pub fn steps(&self) -> NStepSet {
        let sets = MOTZKIN.iter().zip(self.weights).filter(|(_, w)| *w == 1).map(|(s, _)| IntSet::new(s.iter().copied()));
        NStepSet::unweighted(sets).expect("every row has a step")
    }

    /// Exact counts for lengths `0..=n_max`.
    pub fn counts(&self, n_max: usize) -> Result<Vec<Q>, WalkError> {
        let steps = self.steps();
        let model = ProgressionModel::new(&steps)?;
        count_by_dp(&steps, n_max, self.class, StateMode::Compressed(&model))
    }
}

const MOTZKIN: [&[i64]; 7] = [&[1], &[-1], &[0], &[-1, 0], &[0, 1], &[-1, 1], &[-1, 0, 1]];

macro_rules! rows {
    ($($id:literal $class:ident [$($w:literal)*] $oeis:literal $f:expr;)*) => {
        &[$(Row { id: $id, class: Class::$class, weights: [$($w),*], oeis: $oeis, formula: $f }),*]
    };
}

use Formula::*;

pub const ROWS: &[Row] = rows! {
    "A1" Excursion [1 0 0 0 0 1 0] "A126869" Some(CentralBinomialEven);
    "A2" Excursion [0 1 0 0 0 1 0] "A126869" Some(CentralBinomialEven);
    "B1" Excursion [1 0 1 0 0 1 0] "A002426" Some(CentralTrinomial);
    "B2" Excursion [0 1 1 0 0 1 0] "A002426" Some(CentralTrinomial);
    "C1" Excursion [0 0 0 1 0 1 0] "A084174" Some(TwoPowMinusQuarter);
    "C2" Excursion [0 0 0 0 1 1 0] "A084174" Some(TwoPowMinusQuarter);
    "D1" Excursion [0 0 0 0 0 1 1] "A051049" Some(TwoPowMinusParity);
    "E1" Excursion [0 0 1 0 0 1 1] "A083313" Some(ThreePowShifted);
    "F1" Excursion [1 0 0 1 0 0 0] "A001405" Some(CentralBinomialFloor);
    "F2" Excursion [0 1 0 0 1 0 0] "A001405" Some(CentralBinomialFloor);
    "F3" Excursion [1 0 0 0 0 0 1] "A001405" Some(CentralBinomialFloor);
    "F4" Excursion [0 1 0 0 0 0 1] "A001405" Some(CentralBinomialFloor);
    "G1" Excursion [1 0 1 1 1 0 0] "A001700" Some(OddBinomial);
    "G2" Excursion [1 0 1 0 1 0 1] "A001700" Some(OddBinomial);
    "G3" Excursion [0 1 1 1 1 0 0] "A001700" Some(OddBinomial);
    "G4" Excursion [0 1 1 1 0 0 1] "A001700" Some(OddBinomial);
    "H1" Excursion [0 0 1 1 1 0 0] "A000244" Some(ThreePow);
    "H2" Excursion [0 0 1 1 0 0 1] "A000244" Some(ThreePow);
    "H3" Excursion [0 0 1 0 1 0 1] "A000244" Some(ThreePow);
    "H4" Excursion [0 0 0 1 1 0 1] "A000244" Some(ThreePow);
    "I1" Excursion [1 0 1 1 0 0 0] "A005773" Some(TrinomialPair);
    "I2" Excursion [0 1 1 0 1 0 0] "A005773" Some(TrinomialPair);
    "I3" Excursion [1 0 0 1 1 0 0] "A005773" Some(TrinomialPair);
    "I4" Excursion [0 1 0 1 1 0 0] "A005773" Some(TrinomialPair);
    "I5" Excursion [1 0 1 0 0 0 1] "A005773" Some(TrinomialPair);
    "I6" Excursion [0 1 1 0 0 0 1] "A005773" Some(TrinomialPair);
    "I7" Excursion [0 1 0 1 0 0 1] "A005773" Some(TrinomialPair);
    "I8" Excursion [1 0 0 0 1 0 1] "A005773" Some(TrinomialPair);
    "J1" Excursion [1 0 0 1 0 0 1] "A151281" None;
    "J2" Excursion [0 1 0 0 1 0 1] "A151281" None;
    "K1" Excursion [1 0 1 1 0 0 1] "A129637" None;
    "K2" Excursion [0 1 1 0 1 0 1] "A129637" None;
    "K3" Excursion [1 0 0 1 1 0 1] "A129637" None;
    "K4" Excursion [0 1 0 1 1 0 1] "A129637" None;
    "L1" Excursion [1 0 1 1 1 0 1] "A151251" None;
    "L2" Excursion [0 1 1 1 1 0 1] "A151251" None;
    "M1" Meander [0 1 0 0 0 1 0] "A001405" Some(CentralBinomialFloor);
    "M2" Meander [0 1 0 0 0 0 1] "A001405" Some(CentralBinomialFloor);
    "M3" Meander [1 1 1 1 0 0 0] "A001700" Some(OddBinomial);
    "M4" Meander [0 1 1 1 1 0 0] "A001700" Some(OddBinomial);
    "M5" Meander [0 1 1 1 0 1 0] "A001700" Some(OddBinomial);
    "M6" Meander [0 1 1 1 0 0 1] "A001700" Some(OddBinomial);
    "M7" Meander [1 1 0 1 0 0 0] "A005773" Some(TrinomialPair);
    "M8" Meander [0 1 1 0 1 0 0] "A005773" Some(TrinomialPair);
    "M9" Meander [0 1 0 1 1 0 0] "A005773" Some(TrinomialPair);
    "M10" Meander [0 1 1 0 0 1 0] "A005773" Some(TrinomialPair);
    "M11" Meander [0 1 0 1 0 1 0] "A005773" Some(TrinomialPair);
    "M12" Meander [0 1 1 0 0 0 1] "A005773" Some(TrinomialPair);
    "M13" Meander [0 1 0 1 0 0 1] "A005773" Some(TrinomialPair);
    "M14" Meander [1 1 0 0 1 0 0] "A151281" None;
    "M15" Meander [1 1 0 0 0 1 0] "A151281" None;
    "M16" Meander [0 1 0 0 1 1 0] "A151281" None;
    "M17" Meander [1 1 0 0 0 0 1] "A151281" None;
    "M18" Meander [0 1 0 0 1 0 1] "A151281" None;
    "M19" Meander [0 1 0 0 0 1 1] "A151281" None;
    "M20" Meander [1 1 0 0 1 1 0] "A151162" None;
    "M21" Meander [1 1 0 0 1 0 1] "A151162" None;
    "M22" Meander [1 1 0 0 0 1 1] "A151162" None;
    "M23" Meander [0 1 0 0 1 1 1] "A151162" None;
    "M24" Meander [1 1 1 1 1 0 0] "A151251" None;
    "M25" Meander [1 1 1 1 0 1 0] "A151251" None;
    "M26" Meander [0 1 1 1 1 1 0] "A151251" None;
    "M27" Meander [1 1 1 1 0 0 1] "A151251" None;
    "M28" Meander [0 1 1 1 1 0 1] "A151251" None;
    "M29" Meander [0 1 1 1 0 1 1] "A151251" None;
    "M30" Meander [1 1 1 0 1 1 0] "A151253" None;
    "M31" Meander [1 1 0 1 1 1 0] "A151253" None;
    "M32" Meander [1 1 1 0 1 0 1] "A151253" None;
    "M33" Meander [1 1 0 1 1 0 1] "A151253" None;
    "M34" Meander [1 1 1 0 0 1 1] "A151253" None;
    "M35" Meander [1 1 0 1 0 1 1] "A151253" None;
    "M36" Meander [0 1 1 0 1 1 1] "A151253" None;
    "M37" Meander [0 1 0 1 1 1 1] "A151253" None;
    "M38" Meander [1 1 0 0 1 1 1] "A151254" None;
};

pub fn find(id: &str) -> Option<&'static Row> {
    ROWS.iter().find(|r| r.id.eq_ignore_ascii_case(id))
}

/// Outcome of comparing one formula row with the DP.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowCheck {
    pub id: &'static str,
    pub n_max: usize,
    /// Lengths where the DP and the formula differ, with both values.
    pub mismatches: Vec<(usize, Q, BigInt)>,
}

impl RowCheck {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// `None` for rows without a formula.
pub fn check_row(row: &Row, n_max: usize) -> Result<Option<RowCheck>, WalkError> {
    let Some(f) = row.formula else { return Ok(None) };
    let counts = row.counts(n_max)?;
    let mismatches = counts
        .into_iter()
        .enumerate()
        .filter_map(|(n, c)| {
            let want = f.eval(n as u64);
            (c != Q::from_integer(want.clone())).then_some((n, c, want))
        })
        .collect();
    Ok(Some(RowCheck { id: row.id, n_max, mismatches }))
}
