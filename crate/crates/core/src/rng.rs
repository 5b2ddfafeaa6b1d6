//! Seed discipline.
//!
//! Every stochastic quantity is drawn from a stream keyed by
//! `(master seed, trial index, stream tag)`. Streams never depend on the
//! order in which trials are scheduled, so serial and parallel runs agree.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type TrialRng = ChaCha8Rng;

/// Stream tag for arrival-sequence sampling.
pub const ARRIVALS: u64 = 0;
/// Stream tag for a randomized policy's own coin flips.
pub const POLICY: u64 = 1;
/// Stream tag for instance generation.
pub const INSTANCE: u64 = 2;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Mixes a master seed with a trial index and stream tag into a fresh seed.
pub fn derive_seed(master: u64, trial: u64, stream: u64) -> u64 {
    let h = splitmix64(master ^ splitmix64(trial.wrapping_add(0xA076_1D64_78BD_642F)));
    splitmix64(h ^ splitmix64(stream.wrapping_add(0xE703_7ED1_A0B4_28DB)))
}

pub fn rng_from_seed(seed: u64) -> TrialRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn trial_rng(master: u64, trial: u64, stream: u64) -> TrialRng {
    rng_from_seed(derive_seed(master, trial, stream))
}
