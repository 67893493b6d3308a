//! Seeded, platform-independent randomness.
//!
//! Every random decision in the crate goes through [`RngHandle`], which wraps
//! ChaCha8 seeded via `SeedableRng::seed_from_u64`. Bernoulli draws, bounded
//! integers and shuffles are implemented here on top of raw `u64` output
//! so results do not depend on the sampling algorithms of any `rand`
//! release.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// Identifier written into experiment metadata.
pub const GENERATOR_ID: &str = "chacha8/seed_from_u64; gnp pairs lexicographic u<v; bernoulli u53<p";

#[derive(Clone, Debug)]
pub struct RngHandle {
    seed: u64,
    inner: ChaCha8Rng,
}

impl RngHandle {
    pub fn new(seed: u64) -> Self {
        RngHandle {
            seed,
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Number of 32-bit words consumed so far.
    pub fn stream_position(&self) -> u128 {
        self.inner.get_word_pos()
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform in `[0, 1)` with 53 bits of precision.
    #[inline]
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// `true` with probability `p`; `p <= 0` never, `p >= 1` always.
    #[inline]
    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.unit() < p
    }

    /// Uniform in `0..bound` by rejection (no modulo bias). `bound` must be > 0.
    pub fn below(&mut self, bound: usize) -> usize {
        assert!(bound > 0, "below(0)");
        let bound = bound as u64;
        let zone = u64::MAX - (u64::MAX % bound);
        loop {
            let x = self.next_u64();
            if x < zone {
                return (x % bound) as usize;
            }
        }
    }

    /// Fisher-Yates, from the back.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i + 1);
            items.swap(i, j);
        }
    }

    /// `k` distinct elements of `items` chosen uniformly, in random order.
    pub fn sample<T: Copy>(&mut self, items: &[T], k: usize) -> Vec<T> {
        let mut pool = items.to_vec();
        let k = k.min(pool.len());
        for i in 0..k {
            let j = i + self.below(pool.len() - i);
            pool.swap(i, j);
        }
        pool.truncate(k);
        pool
    }

    /// Independent child stream, deterministic in (this seed, label).
    pub fn fork(&self, label: u64) -> RngHandle {
        RngHandle::new(mix_seed(&[self.seed, label]))
    }
}

/// SplitMix64 finalizer.
#[inline]
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Folds values into one seed: `h = splitmix64(h ^ x)` starting from 0.
pub fn mix_seed(parts: &[u64]) -> u64 {
    parts.iter().fold(0u64, |h, &x| splitmix64(h ^ x))
}
