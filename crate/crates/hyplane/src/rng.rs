//! Splittable, counter-based random streams.
//!
//! A [`RandomStream`] is identified by a 64-bit seed plus a path of split
//! indices. The same `(seed, path)` always yields the same variate sequence,
//! and child streams obtained through [`RandomStream::split`] are independent
//! of the parent's consumption state. This is what makes parallel tiling
//! generation deterministic: every gap of the recursion owns a stream derived
//! from its structural position, never from scheduling order.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(GOLDEN);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Derive an unrelated seed from a base seed and an index; used to fan a
/// single experiment seed out into independent per-replica seeds.
pub fn derive_seed(seed: u64, k: u64) -> u64 {
    splitmix64(seed ^ splitmix64(k.wrapping_add(GOLDEN)))
}

/// Reproducible stream of uniform variates with cheap, stateless splitting.
#[derive(Clone, Debug)]
pub struct RandomStream {
    seed: u64,
    path: Vec<u64>,
    // 128-bit key digest of (seed, path); drives the block cipher.
    key: (u64, u64),
    rng: ChaCha8Rng,
}

fn derive_key(parent: (u64, u64), index: u64) -> (u64, u64) {
    let k = splitmix64(index ^ GOLDEN);
    (
        splitmix64(parent.0 ^ k),
        splitmix64(parent.1 ^ k.rotate_left(17) ^ 0x5851_F42D_4C95_7F2D),
    )
}

fn cipher_for(key: (u64, u64)) -> ChaCha8Rng {
    let mut seed = [0u8; 32];
    seed[0..8].copy_from_slice(&key.0.to_le_bytes());
    seed[8..16].copy_from_slice(&key.1.to_le_bytes());
    seed[16..24].copy_from_slice(&splitmix64(key.0 ^ 0xA5A5).to_le_bytes());
    seed[24..32].copy_from_slice(&splitmix64(key.1 ^ 0xC3C3).to_le_bytes());
    ChaCha8Rng::from_seed(seed)
}

impl RandomStream {
    pub fn new(seed: u64) -> Self {
        let key = (splitmix64(seed), splitmix64(seed ^ GOLDEN));
        RandomStream {
            seed,
            path: Vec::new(),
            key,
            rng: cipher_for(key),
        }
    }

    /// Child stream at split index `k`. Does not consume or depend on the
    /// parent's position, only on its identity.
    pub fn split(&self, k: u64) -> Self {
        let key = derive_key(self.key, k);
        let mut path = self.path.clone();
        path.push(k);
        RandomStream {
            seed: self.seed,
            path,
            key,
            rng: cipher_for(key),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn path(&self) -> &[u64] {
        &self.path
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform on [0, 1).
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform on (0, 1]; safe to pass to `ln`.
    pub fn uniform_open(&mut self) -> f64 {
        1.0 - self.uniform()
    }

    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// Fair coin.
    pub fn coin(&mut self) -> bool {
        self.next_u64() & 1 == 1
    }

    /// Exponential variate with the given rate.
    pub fn exponential(&mut self, rate: f64) -> f64 {
        -self.uniform_open().ln() / rate
    }
}
