//! Seeded random presentations.

use polybase_core::polymatroid::{Presentation, Subset};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::CliResult;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `m` subsets of `[n]`, each uniform among the nonempty ones.
pub fn random_presentation<R: Rng>(rng: &mut R, n: usize, m: usize) -> CliResult<Presentation> {
    let sets: Vec<Subset> = (0..m).map(|_| rng.gen_range(1..1u64 << n)).collect();
    Ok(Presentation::new(n, sets)?)
}

/// `samples` canonicalized presentations with `n` sets over `[n]`.
pub fn sample_presentations(seed: u64, n: usize, samples: usize) -> CliResult<Vec<Presentation>> {
    let mut rng = rng(seed);
    (0..samples).map(|_| random_presentation(&mut rng, n, n).map(|p| p.canonical())).collect()
}
