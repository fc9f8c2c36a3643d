//! Benchmark automata families, random automata and the `.aut` to DFA
//! pipeline.

mod aut;
mod bitsplit;
mod cycle;
mod family;
mod fib;
mod memory;
mod random;

pub use aut::{complete_to_dfa, determinize, load_aut, DeterminizeLimits};
pub use bitsplit::{gen_bitsplitter, gen_bitsplitter_ext};
pub use cycle::{cycle_fib, gen_cycle};
pub use family::Family;
pub use fib::{fib_word, gen_fib, FibWord};
pub use memory::{gen_memory_forgetful, gen_memory_forgetful_with, gen_memory_perfect, ForgetfulReset};
pub use random::gen_random_dfa;

use crate::error::{Error, Result};

/// Largest automaton the generators build unless a caller asks otherwise.
pub const DEFAULT_MAX_STATES: usize = 1 << 27;

pub(crate) fn check_budget(what: &'static str, states: u128, limit: usize) -> Result<usize> {
    if states > limit as u128 {
        return Err(Error::ResourceExceeded {
            what,
            required: u64::try_from(states).unwrap_or(u64::MAX),
            limit: limit as u64,
        });
    }
    Ok(states as usize)
}

pub(crate) fn require(cond: bool, message: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter(message()))
    }
}
