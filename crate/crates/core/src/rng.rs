//! Deterministic seeding.
//!
//! Every random draw in the crate comes from a [`ChaCha8Rng`] seeded with an
//! explicit 64-bit value. Work items derive their own seed from a base seed and
//! an index, so each item can be reproduced in isolation.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

/// Generator for a 64-bit seed.
pub fn from_seed(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Seed of the `index`-th work item under `base` (SplitMix64 finalizer).
pub fn derive_seed(base: u64, index: u64) -> u64 {
    let mut z = base ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for a labelled sub-stream, e.g. per `(d, k)` cell.
pub fn derive_seed2(base: u64, a: u64, b: u64) -> u64 {
    derive_seed(derive_seed(base, a), b)
}
