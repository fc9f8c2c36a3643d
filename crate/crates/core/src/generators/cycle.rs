use super::{check_budget, require, DEFAULT_MAX_STATES};
use crate::automata::{bitset_from, Dfa};
use crate::error::Result;

/// Fibonacci numbers with `fib(1) = 1`, `fib(2) = 2`. Saturates on overflow.
pub fn cycle_fib(n: usize) -> u128 {
    let (mut a, mut b) = (1u128, 2u128);
    if n <= 1 {
        return 1;
    }
    for _ in 2..n {
        (a, b) = (b, a.saturating_add(b));
    }
    b
}

/// Smallest `m ≥ 1` with `10^m ≥ x`.
fn decimal_digits_ceil(x: u128) -> usize {
    let mut m = 1;
    let mut p = 10u128;
    while p < x {
        p *= 10;
        m += 1;
    }
    m
}

/// Cycle automaton `C_n` with `fib(n)` states and letters `a_0 .. a_m`,
/// where `m = max(⌈log₁₀ fib(n)⌉, 1)`. Letter `a_j` moves state `i` to
/// `i + 100·j + 1 mod fib(n)`; the only accepting state is `fib(n - 1)`.
pub fn gen_cycle(n: usize) -> Result<Dfa> {
    gen_cycle_within(n, DEFAULT_MAX_STATES)
}

pub(crate) fn gen_cycle_within(n: usize, max_states: usize) -> Result<Dfa> {
    require(n >= 2, || format!("cycle index must be at least 2, got {n}"))?;
    let states = check_budget("cycle automaton (states)", cycle_fib(n), max_states)?;
    let m = decimal_digits_ceil(states as u128);
    let size = states as u64;
    let delta = (0..=m as u64)
        .map(|j| {
            let step = (100 * j + 1) % size;
            (0..size).map(|i| ((i + step) % size) as u32).collect()
        })
        .collect();
    let accepting = bitset_from(states, [cycle_fib(n - 1) as usize]);
    let names = (0..=m).map(|j| format!("a{j}")).collect();
    Dfa::new(delta, accepting, Some(0))?.with_letter_names(names)
}
