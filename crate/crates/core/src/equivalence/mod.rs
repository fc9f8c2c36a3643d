//! Language equivalence and inclusion by exploring the synchronous product.
//!
//! The checkers keep a plain visited set of state pairs (no union-find) and
//! explore the product breadth-first in synchronous waves, so the first
//! failing pair found yields a shortest counterexample.

mod product;
mod visited;

pub use product::{
    check_equiv, check_inclusion, explore_product, Mode, ProductOptions, ProductResult, Verdict,
};
pub use visited::{pack, unpack, PairSet};
