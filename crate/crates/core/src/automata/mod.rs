//! Automaton and partition data model shared by every other module.

mod apart;
mod dfa;
mod lts;
mod partition;
mod text;
mod transform;

pub use apart::{partition_from_apart, ApartMatrix};
pub use dfa::{bitset_from, validate, Dfa, StateId, Violation, Word, MAX_STATES};
pub use lts::{Lts, Transition};
pub use partition::Partition;
pub use text::{read_dfa, write_dfa};
pub use transform::{canonical_form, prune_unreachable, quotient, UNREACHABLE};
