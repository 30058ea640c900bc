//! Seeded random source shared by row sampling and fixture generation.
//!
//! The stream is ChaCha8 keyed through `SeedableRng::seed_from_u64`. Bounded
//! integers use Lemire's widening-multiply method with rejection and unit
//! floats take the top 53 bits of one 64-bit word, so every draw is a fixed
//! function of the seed on every platform.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone)]
pub struct SeededRng {
    inner: ChaCha8Rng,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        SeededRng {
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform integer in `0..bound`. `bound` must be nonzero.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        let mut m = u128::from(self.next_u64()) * u128::from(bound);
        let mut low = m as u64;
        if low < bound {
            let threshold = bound.wrapping_neg() % bound;
            while low < threshold {
                m = u128::from(self.next_u64()) * u128::from(bound);
                low = m as u64;
            }
        }
        (m >> 64) as u64
    }

    pub fn index(&mut self, bound: usize) -> usize {
        self.below(bound as u64) as usize
    }

    /// Uniform in `[0, 1)`.
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }
}

/// Partial Fisher–Yates: the first `take` entries of a shuffled `0..n`.
pub(crate) fn partial_shuffle(rng: &mut SeededRng, n: usize, take: usize) -> Vec<usize> {
    let take = take.min(n);
    let mut idx: Vec<usize> = (0..n).collect();
    for i in 0..take {
        let j = i + rng.index(n - i);
        idx.swap(i, j);
    }
    idx.truncate(take);
    idx
}
