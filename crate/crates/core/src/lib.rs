//! Parallel-style DFA minimisation and language equivalence checking.
//!
//! The crate is organised around a flat, letter-major automaton
//! representation ([`Dfa`]) shared by four groups of functionality:
//!
//! * [`automata`]: the data model, validation, quotients, canonical forms and
//!   the plain-text DFA file format.
//! * [`minimize`]: partition-refinement minimisers written against a
//!   bulk-synchronous execution contract (leader election, signature sorting,
//!   partial transitive closure) together with the pair-graph closure
//!   algorithm and a sequential Moore-style reference.
//! * [`equivalence`]: naive Hopcroft-Karp equivalence and inclusion checking
//!   by wave-synchronous exploration of the synchronous product.
//! * [`generators`]: benchmark automata families, random DFAs and the
//!   `.aut` to DFA conversion pipeline.
//!
//! With the default `parallel` feature every bulk step runs on the rayon
//! thread pool; without it the same steps execute sequentially.

pub mod automata;
pub mod equivalence;
mod error;
pub mod generators;
pub mod minimize;
pub mod par;

pub use automata::{ApartMatrix, Dfa, Lts, Partition, StateId, Violation, Word};
pub use error::{Error, Result};
