//! Exact construction of complex simple Lie algebras over the rationals by
//! the minuscule and adjoint algorithms.

pub mod adjoint;
pub mod exactlin;
pub mod minuscule;
pub mod repcore;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Deterministic RNG used by every sampled check.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
