use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::require;
use crate::automata::{Dfa, MAX_STATES};
use crate::error::Result;
use fixedbitset::FixedBitSet;

/// Uniform random DFA with initial state 0: every transition target is
/// drawn independently, and each state accepts with probability
/// `accept_fraction`. Equal seeds give equal automata.
pub fn gen_random_dfa(n: usize, k: usize, accept_fraction: f64, seed: u64) -> Result<Dfa> {
    require(n >= 1 && n < MAX_STATES, || format!("state count {n} out of range"))?;
    require(k >= 1, || "alphabet must not be empty".into())?;
    require((0.0..=1.0).contains(&accept_fraction), || {
        format!("accept fraction {accept_fraction} is not in [0, 1]")
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut accepting = FixedBitSet::with_capacity(n);
    for q in 0..n {
        accepting.set(q, rng.random_bool(accept_fraction));
    }
    let delta = (0..k)
        .map(|_| (0..n).map(|_| rng.random_range(0..n as u32)).collect())
        .collect();
    Dfa::new(delta, accepting, Some(0))
}
