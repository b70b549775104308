//! The single random source used throughout the crate.
//!
//! Every randomized operation takes a `u64` seed and expands it with
//! [`seeded_rng`]: ChaCha8 keyed by `rand_core`'s `seed_from_u64` (a PCG32
//! expansion of the seed into the 32-byte key). ChaCha8 output is specified
//! independently of platform and word size, so transcripts for a given seed
//! are portable.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type ProjectRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> ProjectRng {
    ChaCha8Rng::seed_from_u64(seed)
}
