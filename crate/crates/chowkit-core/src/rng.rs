//! Seeded randomness shared by all Monte Carlo procedures.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Cap applied to every sampling grid (keeps coefficient bitsizes small).
pub const GRID_CAP: u64 = 1 << 15;

/// A reproducible source of random integers drawn from a grid `{1..=bound}`
/// (or a symmetric grid around zero), together with a retry budget.
#[derive(Debug, Clone)]
pub struct RandomGrid {
    seed: u64,
    bound: u64,
    retries: usize,
    rng: ChaCha8Rng,
}

impl RandomGrid {
    pub fn new(seed: u64, bound: u64, retries: usize) -> Self {
        RandomGrid {
            seed,
            bound: bound.clamp(1, GRID_CAP),
            retries: retries.max(1),
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// A grid with the same seed-derived stream but a different bound.
    pub fn with_bound(&self, bound: u64) -> Self {
        let mut g = self.clone();
        g.bound = bound.clamp(1, GRID_CAP);
        g
    }

    /// An independent substream keyed by `tag`; the parent stream advances.
    pub fn fork(&mut self, tag: u64) -> Self {
        let s: u64 = self.rng.gen::<u64>() ^ tag.wrapping_mul(0x9E37_79B9_7F4A_7C15);
        RandomGrid { seed: self.seed, bound: self.bound, retries: self.retries, rng: ChaCha8Rng::seed_from_u64(s) }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
    pub fn bound(&self) -> u64 {
        self.bound
    }
    pub fn retries(&self) -> usize {
        self.retries
    }

    /// Uniform element of `{1, ..., bound}`.
    pub fn grid(&mut self) -> i64 {
        self.rng.gen_range(1..=self.bound) as i64
    }

    /// Uniform element of `{-bound, ..., bound}`.
    pub fn symmetric(&mut self) -> i64 {
        let b = self.bound as i64;
        self.rng.gen_range(-b..=b)
    }

    /// Uniform integer in `[lo, hi]`.
    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn grid_big(&mut self) -> BigInt {
        BigInt::from(self.grid())
    }

    pub fn symmetric_big(&mut self) -> BigInt {
        BigInt::from(self.symmetric())
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.gen()
    }
}
