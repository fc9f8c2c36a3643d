use std::fmt;

use super::bitsplit::{gen_bitsplitter_ext_within, gen_bitsplitter_within};
use super::cycle::{cycle_fib, gen_cycle_within};
use super::fib::gen_fib_within;
use super::memory::gen_memory_within;
use super::{check_budget, gen_random_dfa};
use crate::automata::Dfa;
use crate::error::{Error, Result};

/// A generator together with its parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Family {
    Fib { word_index: usize },
    BitSplitter { n: usize },
    BitSplitterExt { n: usize },
    Cycle { n: usize },
    MemoryPerfect { n: usize },
    MemoryForgetful { n: usize },
    Random { n: usize, k: usize, accept_fraction: f64, seed: u64 },
}

impl Family {
    /// Command-line family names, in a fixed order.
    pub const NAMES: [&'static str; 7] = [
        "fib",
        "bitsplit",
        "bitsplit-ext",
        "cycle",
        "memory-perfect",
        "memory-forgetful",
        "random",
    ];

    /// Looks up a family by command-line name. `size` is the word index for
    /// `fib` and `n` otherwise; `random` gets two letters, acceptance
    /// probability 1/2 and seed 0.
    pub fn sized(kind: &str, size: usize) -> Result<Family> {
        Ok(match kind {
            "fib" => Family::Fib { word_index: size },
            "bitsplit" => Family::BitSplitter { n: size },
            "bitsplit-ext" => Family::BitSplitterExt { n: size },
            "cycle" => Family::Cycle { n: size },
            "memory-perfect" => Family::MemoryPerfect { n: size },
            "memory-forgetful" => Family::MemoryForgetful { n: size },
            "random" => Family::Random {
                n: size,
                k: 2,
                accept_fraction: 0.5,
                seed: 0,
            },
            other => {
                return Err(Error::InvalidParameter(format!(
                    "unknown family `{other}`; expected one of {}",
                    Family::NAMES.join(", ")
                )))
            }
        })
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Family::Fib { .. } => "fib",
            Family::BitSplitter { .. } => "bitsplit",
            Family::BitSplitterExt { .. } => "bitsplit-ext",
            Family::Cycle { .. } => "cycle",
            Family::MemoryPerfect { .. } => "memory-perfect",
            Family::MemoryForgetful { .. } => "memory-forgetful",
            Family::Random { .. } => "random",
        }
    }

    /// Number of states the generator would produce, saturating.
    pub fn num_states(&self) -> u128 {
        let pow2 = |e: usize| if e < 127 { 1u128 << e } else { u128::MAX };
        match *self {
            Family::Fib { word_index } => cycle_fib(word_index),
            Family::BitSplitter { n } => pow2(n),
            Family::BitSplitterExt { n } => pow2(n + 1),
            Family::Cycle { n } => cycle_fib(n),
            Family::MemoryPerfect { n } | Family::MemoryForgetful { n } => pow2(n),
            Family::Random { n, .. } => n as u128,
        }
    }

    /// Builds the automaton, refusing instances above `max_states`.
    pub fn generate(&self, max_states: usize) -> Result<Dfa> {
        match *self {
            Family::Fib { word_index } => gen_fib_within(word_index, max_states),
            Family::BitSplitter { n } => gen_bitsplitter_within(n, max_states),
            Family::BitSplitterExt { n } => gen_bitsplitter_ext_within(n, max_states),
            Family::Cycle { n } => gen_cycle_within(n, max_states),
            Family::MemoryPerfect { n } => gen_memory_within(n, false, max_states),
            Family::MemoryForgetful { n } => gen_memory_within(n, true, max_states),
            Family::Random {
                n,
                k,
                accept_fraction,
                seed,
            } => {
                check_budget("random automaton (states)", n as u128, max_states)?;
                gen_random_dfa(n, k, accept_fraction, seed)
            }
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::Fib { word_index } => write!(f, "fib(w{word_index})"),
            Family::BitSplitter { n } => write!(f, "bitsplit({n})"),
            Family::BitSplitterExt { n } => write!(f, "bitsplit-ext({n})"),
            Family::Cycle { n } => write!(f, "cycle({n})"),
            Family::MemoryPerfect { n } => write!(f, "memory-perfect({n})"),
            Family::MemoryForgetful { n } => write!(f, "memory-forgetful({n})"),
            Family::Random {
                n,
                k,
                accept_fraction,
                seed,
            } => write!(f, "random(n={n}, k={k}, p={accept_fraction}, seed={seed})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn predicted_sizes_match() {
        for family in [
            Family::Fib { word_index: 7 },
            Family::BitSplitter { n: 4 },
            Family::BitSplitterExt { n: 4 },
            Family::Cycle { n: 8 },
            Family::MemoryPerfect { n: 3 },
            Family::MemoryForgetful { n: 3 },
            Family::Random {
                n: 12,
                k: 2,
                accept_fraction: 0.5,
                seed: 1,
            },
        ] {
            let dfa = family.generate(1 << 20).unwrap();
            assert_eq!(dfa.num_states as u128, family.num_states(), "{family}");
        }
    }

    #[test]
    fn budget() {
        let err = Family::BitSplitter { n: 20 }.generate(1000).unwrap_err();
        assert!(err.is_resource());
    }
}
