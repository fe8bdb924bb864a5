//! Test support for featfirst: oracles that share no code with the crate
//! under test, and seeded generators for random grammars and structures.

pub mod cf;
pub mod dag;
pub mod featgen;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Deterministic generator for a test seed.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
