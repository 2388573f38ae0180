use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::SumsetError;

/// A finite set of integers, kept as a strictly increasing vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntSet(Vec<i64>);

impl IntSet {
    pub fn new<I: IntoIterator<Item = i64>>(items: I) -> Self {
        let mut v: Vec<i64> = items.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        IntSet(v)
    }

    pub fn empty() -> Self {
        IntSet(Vec::new())
    }

    pub fn singleton(x: i64) -> Self {
        IntSet(vec![x])
    }

    /// `[lo, hi]` stepping by `step`; empty when `lo > hi`.
    pub fn progression(lo: i64, hi: i64, step: i64) -> Self {
        assert!(step > 0, "progression step must be positive");
        if lo > hi {
            return IntSet::empty();
        }
        IntSet((0..=(hi - lo) / step).map(|i| lo + i * step).collect())
    }

    /// Caller guarantees the input is strictly increasing.
    pub(crate) fn from_sorted_unchecked(v: Vec<i64>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        IntSet(v)
    }

    pub fn elements(&self) -> &[i64] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn min(&self) -> Option<i64> {
        self.0.first().copied()
    }

    pub fn max(&self) -> Option<i64> {
        self.0.last().copied()
    }

    pub fn contains(&self, x: i64) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    /// `max - min`, and 0 for the empty set.
    pub fn norm(&self) -> i64 {
        match (self.min(), self.max()) {
            (Some(lo), Some(hi)) => hi - lo,
            _ => 0,
        }
    }

    pub fn shift(&self, m: i64) -> IntSet {
        IntSet(self.0.iter().map(|x| x + m).collect())
    }

    /// Shifted so the minimum is 0. The empty set stays empty.
    pub fn normalized(&self) -> IntSet {
        match self.min() {
            Some(lo) => self.shift(-lo),
            None => IntSet::empty(),
        }
    }

    /// Minkowski sum.
    pub fn sumset(&self, other: &IntSet) -> IntSet {
        if self.is_empty() || other.is_empty() {
            return IntSet::empty();
        }
        if other.len() == 1 {
            return self.shift(other.0[0]);
        }
        if self.len() == 1 {
            return other.shift(self.0[0]);
        }
        // Mark membership in a dense window; both sets are small relative to their span.
        let lo = self.0[0] + other.0[0];
        let span = (self.norm() + other.norm()) as usize + 1;
        if span <= 64 * (self.len() * other.len()).max(64) {
            let mut hit = vec![false; span];
            for &x in &self.0 {
                for &y in &other.0 {
                    hit[(x + y - lo) as usize] = true;
                }
            }
            let v = hit
                .iter()
                .enumerate()
                .filter(|(_, &h)| h)
                .map(|(i, _)| lo + i as i64)
                .collect();
            return IntSet(v);
        }
        IntSet::new(self.0.iter().flat_map(|x| other.0.iter().map(move |y| x + y)))
    }

    /// `n`-fold sum of `self` with itself; `0 × s = {0}`.
    pub fn nfold(&self, n: u32) -> IntSet {
        let mut acc = IntSet::singleton(0);
        for _ in 0..n {
            acc = acc.sumset(self);
        }
        acc
    }

    pub fn difference(&self, other: &IntSet) -> IntSet {
        IntSet(self.0.iter().copied().filter(|x| !other.contains(*x)).collect())
    }

    /// Bottom pruning: `s \ ({min s} + t)`.
    pub fn prune_bottom(&self, t: &IntSet) -> IntSet {
        match self.min() {
            None => IntSet::empty(),
            Some(lo) => self.difference(&t.shift(lo)),
        }
    }

    /// Top pruning: `s \ ({max s} - t)`.
    pub fn prune_top(&self, t: &IntSet) -> IntSet {
        match self.max() {
            None => IntSet::empty(),
            Some(hi) => self.difference(&IntSet::new(t.iter().map(|x| hi - x))),
        }
    }

    /// Reflection inside `[min, max]`. The empty set maps to itself.
    pub fn conjugate(&self) -> IntSet {
        match (self.min(), self.max()) {
            (Some(lo), Some(hi)) => IntSet::new(self.iter().map(|x| lo + hi - x)),
            _ => IntSet::empty(),
        }
    }

    /// Equal up to a translation.
    pub fn equivalent(&self, other: &IntSet) -> bool {
        match (self.min(), other.min()) {
            (None, None) => true,
            (Some(a), Some(b)) => self.len() == other.len() && self.shift(b - a) == *other,
            _ => false,
        }
    }

    /// Elements that are `>= 0`.
    pub fn floor_at_zero(&self) -> IntSet {
        let start = self.0.partition_point(|&x| x < 0);
        IntSet(self.0[start..].to_vec())
    }

    pub fn pack(&self) -> PackedSet {
        PackedSet::from_set(self)
    }
}

impl fmt::Debug for IntSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for IntSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

impl FromStr for IntSet {
    type Err = SumsetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let inner = t
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| SumsetError::Parse(s.to_string()))?;
        if inner.trim().is_empty() {
            return Ok(IntSet::empty());
        }
        let mut v = Vec::new();
        for part in inner.split(',') {
            let x: i64 = part.trim().parse().map_err(|_| SumsetError::Parse(s.to_string()))?;
            v.push(x);
        }
        let set = IntSet::new(v.iter().copied());
        if set.len() != v.len() {
            return Err(SumsetError::Parse(format!("{s}: repeated element")));
        }
        Ok(set)
    }
}

impl Serialize for IntSet {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for IntSet {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl FromIterator<i64> for IntSet {
    fn from_iter<I: IntoIterator<Item = i64>>(iter: I) -> Self {
        IntSet::new(iter)
    }
}

/// Hash-friendly form of a nonempty set: its minimum plus a bitmask of offsets.
///
/// Two packed sets are equal exactly when the underlying `IntSet`s are.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PackedSet {
    min: i64,
    words: Vec<u64>,
}

impl PackedSet {
    fn from_set(s: &IntSet) -> Self {
        let Some(lo) = s.min() else {
            return PackedSet { min: 0, words: Vec::new() };
        };
        let mut words = vec![0u64; (s.norm() as usize) / 64 + 1];
        for x in s.iter() {
            let off = (x - lo) as usize;
            words[off / 64] |= 1 << (off % 64);
        }
        PackedSet { min: lo, words }
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn min(&self) -> Option<i64> {
        (!self.is_empty()).then_some(self.min)
    }

    pub fn unpack(&self) -> IntSet {
        let mut v = Vec::new();
        for (w, &word) in self.words.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                v.push(self.min + (w * 64 + b) as i64);
                bits &= bits - 1;
            }
        }
        IntSet::from_sorted_unchecked(v)
    }
}
