//! The pinned random number generator.
//!
//! Every run draws from a single xoshiro256++ stream seeded through SplitMix64
//! (`SeedableRng::seed_from_u64`). Both algorithms are fully specified integer
//! recurrences, so a seed reproduces the same run on every platform. Uniform
//! floats come from the top 53 bits of a draw; a Bernoulli trial with
//! probability `p` succeeds when that float is below `p`.

use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

pub type SimRng = Xoshiro256PlusPlus;

pub fn seeded(seed: u64) -> SimRng {
    SimRng::seed_from_u64(seed)
}

/// An independent stream for parallel work: `index` long-jumps (2^192 draws
/// each) away from `seed`'s stream.
pub fn split(seed: u64, index: u64) -> SimRng {
    let mut rng = seeded(seed);
    for _ in 0..index {
        rng.long_jump();
    }
    rng
}

/// One Bernoulli trial.
#[inline]
pub fn chance<R: Rng + ?Sized>(rng: &mut R, p: f64) -> bool {
    rng.random::<f64>() < p
}
