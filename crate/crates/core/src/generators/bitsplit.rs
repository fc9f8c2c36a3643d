use super::{check_budget, require, DEFAULT_MAX_STATES};
use crate::automata::{bitset_from, Dfa};
use crate::error::Result;

/// Letter `a_m` of the bit-splitter on state `s` (bitstring value, most
/// significant bit first): when bit `m - 1` is set, flip bit `m` and clear
/// the bits below it; otherwise stay.
#[inline]
fn split(s: u32, m: u32) -> u32 {
    if s >> (m - 1) & 1 == 1 {
        (s ^ (1 << m)) & !((1 << m) - 1)
    } else {
        s
    }
}

/// Bit-splitter `B_n`: states are the bitstrings of length `n`, letters
/// `a_1 .. a_{n-1}`, accepting iff the leading bit is 1, no initial state.
pub fn gen_bitsplitter(n: usize) -> Result<Dfa> {
    gen_bitsplitter_within(n, DEFAULT_MAX_STATES)
}

pub(crate) fn gen_bitsplitter_within(n: usize, max_states: usize) -> Result<Dfa> {
    require(n >= 1, || "bit-splitter size must be at least 1".into())?;
    require(n < 32, || format!("bit-splitter size {n} exceeds 31"))?;
    let states = check_budget("bit-splitter (states)", 1u128 << n, max_states)?;
    let delta = (1..n as u32)
        .map(|m| (0..states as u32).map(|s| split(s, m)).collect())
        .collect();
    let top = 1usize << (n - 1);
    let accepting = bitset_from(states, top..states);
    let names = (1..n).map(|m| format!("a{m}")).collect();
    Dfa::new(delta, accepting, None)?.with_letter_names(names)
}

/// Extended bit-splitter `B'_n`: a control bit `c` and a bitstring `σ` of
/// length `n`, encoded as `(c << n) | σ`, initial `(0, 0ⁿ)`.
///
/// Letters, in order: `r` sets `c`; `b_1 .. b_n` set bit `i - 1` of `σ`
/// while `c = 0`; `a_1 .. a_{n-1}` act as in [`gen_bitsplitter`] while
/// `c = 1`. Accepting iff `c = 1` and the leading bit of `σ` is 1.
pub fn gen_bitsplitter_ext(n: usize) -> Result<Dfa> {
    gen_bitsplitter_ext_within(n, DEFAULT_MAX_STATES)
}

pub(crate) fn gen_bitsplitter_ext_within(n: usize, max_states: usize) -> Result<Dfa> {
    require(n >= 1, || "extended bit-splitter size must be at least 1".into())?;
    require(n < 31, || format!("extended bit-splitter size {n} exceeds 30"))?;
    let states = check_budget("extended bit-splitter (states)", 1u128 << (n + 1), max_states)?;
    let control = 1u32 << n;
    let sigma_mask = control - 1;
    let mut delta: Vec<Vec<u32>> = Vec::with_capacity(2 * n);
    let mut names = Vec::with_capacity(2 * n);

    delta.push((0..states as u32).map(|s| s | control).collect());
    names.push("r".to_string());
    for i in 1..=n as u32 {
        delta.push(
            (0..states as u32)
                .map(|s| if s & control == 0 { s | 1 << (i - 1) } else { s })
                .collect(),
        );
        names.push(format!("b{i}"));
    }
    for m in 1..n as u32 {
        delta.push(
            (0..states as u32)
                .map(|s| {
                    if s & control != 0 {
                        control | split(s & sigma_mask, m)
                    } else {
                        s
                    }
                })
                .collect(),
        );
        names.push(format!("a{m}"));
    }
    let top = 1u32 << (n - 1);
    let accepting = bitset_from(
        states,
        (0..states as u32)
            .filter(|&s| s & control != 0 && s & top != 0)
            .map(|s| s as usize),
    );
    Dfa::new(delta, accepting, Some(0))?.with_letter_names(names)
}
