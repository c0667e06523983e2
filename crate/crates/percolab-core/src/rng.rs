//! Deterministic seed derivation.
//!
//! Every randomized routine takes an explicit `u64` seed and derives an
//! independent ChaCha8 stream from it. Sub-tasks (trials, sweep points,
//! retries) get their own seeds through [`split_seed`], so results never
//! depend on scheduling, thread count, or evaluation order.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Default base seed used by the command line tools.
pub const DEFAULT_SEED: u64 = 0xC0FFEE;

/// splitmix64 finalizer. Bijective on `u64` with good avalanche behavior.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives the seed for sub-task `index` of a task seeded with `base`.
pub fn split_seed(base: u64, index: u64) -> u64 {
    splitmix64(base ^ index)
}

/// Fresh deterministic generator for the given seed.
pub fn stream(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
