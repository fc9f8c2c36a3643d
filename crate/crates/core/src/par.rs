//! Bulk-synchronous step helpers.
//!
//! Each helper runs one "do in parallel for" step. Callers read only
//! pre-step data inside the closure and publish results through the return
//! value or through atomics, so sequential and threaded execution produce the
//! same post-step state.

use std::time::Duration;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[cfg(feature = "parallel")]
const MIN_CHUNK: usize = 1 << 10;

/// Runs `f` for every index in `0..n`.
pub fn for_each(n: usize, f: impl Fn(usize) + Sync + Send) {
    #[cfg(feature = "parallel")]
    (0..n).into_par_iter().with_min_len(MIN_CHUNK).for_each(f);
    #[cfg(not(feature = "parallel"))]
    (0..n).for_each(f);
}

/// Collects `f(i)` for every index in `0..n`, in index order.
pub fn map<T: Send>(n: usize, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    #[cfg(feature = "parallel")]
    return (0..n).into_par_iter().with_min_len(MIN_CHUNK).map(f).collect();
    #[cfg(not(feature = "parallel"))]
    return (0..n).map(f).collect();
}

/// True if `f(i)` holds for some index.
pub fn any(n: usize, f: impl Fn(usize) -> bool + Sync + Send) -> bool {
    #[cfg(feature = "parallel")]
    return (0..n).into_par_iter().with_min_len(MIN_CHUNK).any(f);
    #[cfg(not(feature = "parallel"))]
    return (0..n).any(f);
}

/// Number of indices in `0..n` for which `f(i)` holds.
pub fn count(n: usize, f: impl Fn(usize) -> bool + Sync + Send) -> usize {
    #[cfg(feature = "parallel")]
    return (0..n)
        .into_par_iter()
        .with_min_len(MIN_CHUNK)
        .filter(|&i| f(i))
        .count();
    #[cfg(not(feature = "parallel"))]
    return (0..n).filter(|&i| f(i)).count();
}

/// Concatenates the outputs of `f` over a slice, preserving slice order.
pub fn flat_map<S: Sync, T: Send, I>(items: &[S], f: impl Fn(&S) -> I + Sync + Send) -> Vec<T>
where
    I: IntoIterator<Item = T>,
    I::IntoIter: Send,
{
    #[cfg(feature = "parallel")]
    return items
        .par_iter()
        .with_min_len(MIN_CHUNK / 8)
        .flat_map_iter(f)
        .collect();
    #[cfg(not(feature = "parallel"))]
    return items.iter().flat_map(f).collect();
}

/// Stable sort of `items` by `cmp`.
pub fn sort_stable_by<T: Send>(
    items: &mut [T],
    cmp: impl Fn(&T, &T) -> std::cmp::Ordering + Sync,
) {
    #[cfg(feature = "parallel")]
    items.par_sort_by(cmp);
    #[cfg(not(feature = "parallel"))]
    items.sort_by(cmp);
}

/// Number of workers a step is spread over.
pub fn workers() -> usize {
    #[cfg(feature = "parallel")]
    return rayon::current_num_threads();
    #[cfg(not(feature = "parallel"))]
    return 1;
}

/// Starts the worker pool so that later timings exclude thread start-up.
/// Returns the time spent, which is zero for the sequential backend.
pub fn warm_up() -> Duration {
    #[cfg(feature = "parallel")]
    {
        let start = std::time::Instant::now();
        rayon::broadcast(|_| ());
        start.elapsed()
    }
    #[cfg(not(feature = "parallel"))]
    Duration::ZERO
}
