use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use nwalk_series::Q;
use rand::RngCore;

use crate::SimError;

/// Random bits served from one buffered 64-bit word at a time.
#[derive(Clone, Debug)]
pub struct BitStream<R> {
    rng: R,
    buf: u64,
    left: u32,
}

impl<R: RngCore> BitStream<R> {
    pub fn new(rng: R) -> Self {
        BitStream { rng, buf: 0, left: 0 }
    }

    /// The next `b` bits. Leftover bits too few for a request are discarded.
    pub fn bits(&mut self, b: u32) -> u64 {
        if b == 64 {
            return self.rng.next_u64();
        }
        if self.left < b {
            self.buf = self.rng.next_u64();
            self.left = 64;
        }
        let v = self.buf & ((1u64 << b) - 1);
        self.buf >>= b;
        self.left -= b;
        v
    }
}

/// Inverse CDF over step indices with exact integer thresholds.
///
/// Weights `w_i = c_i / L` over a common denominator `L`. A uniform `u` in
/// `0..L` comes from `ceil(log2 L)`-bit words, rejecting words `>= L`, and
/// selects the first `i` with `c_0 + … + c_i > u`.
#[derive(Clone, Debug)]
pub struct StepSampler {
    denominator: u64,
    width: u32,
    cumulative: Vec<u64>,
}

impl StepSampler {
    pub fn new(weights: &[Q]) -> Result<Self, SimError> {
        if let Some(w) = weights.iter().find(|w| w.is_negative()) {
            return Err(SimError::NegativeWeight(w.to_string()));
        }
        let total: Q = weights.iter().fold(Q::zero(), |a, w| a + w);
        if !total.is_one() {
            return Err(SimError::NotNormalized(total.to_string()));
        }
        let l = weights.iter().fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
        let denominator = l.to_u64().ok_or(SimError::Denominator)?;
        let mut acc = 0u64;
        let cumulative = weights
            .iter()
            .map(|w| {
                acc += (w.numer() * (&l / w.denom())).to_u64().expect("part of a u64 total");
                acc
            })
            .collect();
        let width = 64 - (denominator - 1).leading_zeros();
        Ok(StepSampler { denominator, width, cumulative })
    }

    pub fn draw<R: RngCore>(&self, src: &mut BitStream<R>) -> usize {
        let u = loop {
            let u = src.bits(self.width);
            if u < self.denominator {
                break u;
            }
        };
        self.cumulative.partition_point(|&c| c <= u)
    }

    pub fn denominator(&self) -> u64 {
        self.denominator
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(a: i64, b: i64) -> Q {
        Q::new(a.into(), b.into())
    }

    #[test]
    fn zero_weights_are_never_drawn() {
        let s = StepSampler::new(&[q(0, 1), q(1, 1), q(0, 1)]).unwrap();
        let mut src = BitStream::new(ChaCha8Rng::seed_from_u64(1));
        assert!((0..1000).all(|_| s.draw(&mut src) == 1));
    }

    #[test]
    fn thresholds_are_exact() {
        let s = StepSampler::new(&[q(1, 6), q(1, 3), q(1, 2)]).unwrap();
        assert_eq!(s.denominator(), 6);
        assert_eq!(s.cumulative, vec![1, 3, 6]);
        assert_eq!(s.width, 3);
    }

    #[test]
    fn single_step_uses_no_bits() {
        let s = StepSampler::new(&[q(1, 1)]).unwrap();
        assert_eq!(s.width, 0);
        let mut src = BitStream::new(ChaCha8Rng::seed_from_u64(1));
        assert_eq!(s.draw(&mut src), 0);
        assert_eq!(src.left, 0);
    }

    #[test]
    fn bits_are_taken_low_first() {
        let mut a = BitStream::new(ChaCha8Rng::seed_from_u64(9));
        let word = ChaCha8Rng::seed_from_u64(9).next_u64();
        assert_eq!(a.bits(3), word & 7);
        assert_eq!(a.bits(5), (word >> 3) & 31);
    }

    #[test]
    fn rejects_bad_weights() {
        assert!(matches!(StepSampler::new(&[q(1, 2), q(1, 3)]), Err(SimError::NotNormalized(_))));
        assert!(matches!(StepSampler::new(&[q(3, 2), q(-1, 2)]), Err(SimError::NegativeWeight(_))));
    }
}
