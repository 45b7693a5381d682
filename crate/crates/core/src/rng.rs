//! Deterministic RNG streams.
//!
//! A stream is addressed by a 64-bit seed plus a path of stream ids
//! (realization, role, shock, ...). Each step of the path is folded into
//! the key with SplitMix64, and the final key seeds a ChaCha8 generator, so
//! draws depend only on the address and never on execution order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub type Rng = ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RngStream {
    pub seed: u64,
    pub stream_id: u64,
}

/// SplitMix64 finalizer.
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl RngStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        Self { seed, stream_id }
    }

    /// Root stream for a master seed.
    pub fn root(seed: u64) -> Self {
        Self::new(seed, 0)
    }

    fn key(&self) -> u64 {
        mix64(mix64(self.seed) ^ self.stream_id.rotate_left(17) ^ 0x5EED_CA5C_ADE0_0001)
    }

    /// Child stream `id` of this stream. Children of distinct parents or
    /// with distinct ids are addressed by distinct keys.
    pub fn child(&self, id: u64) -> Self {
        Self::new(self.key(), id)
    }

    pub fn rng(&self) -> Rng {
        ChaCha8Rng::seed_from_u64(self.key())
    }
}
