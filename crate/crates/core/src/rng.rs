//! Seeded random source shared by all estimators.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// SplitMix64 finalizer.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// A reproducible stream of random draws.
///
/// The stream is ChaCha8 seeded from the 64-bit seed. Child streams come
/// from [`RandomSource::derive`], whose seed is
/// `mix64(seed ^ mix64(child + 0x9e3779b97f4a7c15))`; trial `i` of a
/// repeated experiment uses `derive(i)`.
#[derive(Clone, Debug)]
pub struct RandomSource {
    seed: u64,
    rng: ChaCha8Rng,
}

impl RandomSource {
    pub fn new(seed: u64) -> Self {
        RandomSource {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn derive(&self, child: u64) -> RandomSource {
        let child_seed = mix64(self.seed ^ mix64(child.wrapping_add(0x9e37_79b9_7f4a_7c15)));
        RandomSource::new(child_seed)
    }

    /// Uniform in `[0, 1)`.
    #[inline]
    pub fn uniform_real(&mut self) -> f64 {
        self.rng.gen::<f64>()
    }

    /// Uniform in `[0, n)`. `n` must be positive.
    #[inline]
    pub fn uniform_index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    #[inline]
    pub fn uniform_below(&mut self, n: u64) -> u64 {
        self.rng.gen_range(0..n)
    }

    /// Number of failures before the first success of a Bernoulli(`p`)
    /// sequence, drawn by inversion. `p` must lie in `(0, 1)`.
    #[inline]
    pub fn geometric_skip(&mut self, p: f64) -> u64 {
        let u = self.uniform_real();
        // 1 - u lies in (0, 1], so the logarithm is finite.
        let skip = (-u).ln_1p() / (-p).ln_1p();
        if skip >= u64::MAX as f64 {
            u64::MAX
        } else {
            skip as u64
        }
    }
}
