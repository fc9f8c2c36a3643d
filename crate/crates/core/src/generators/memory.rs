use super::{check_budget, require, DEFAULT_MAX_STATES};
use crate::automata::{bitset_from, Dfa};
use crate::error::Result;

/// Where the forgetful memory checks for the `10` prefix that triggers a reset.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum ForgetfulReset {
    /// A state whose two most significant bits read `10` behaves like `0ⁿ`
    /// on every outgoing transition.
    #[default]
    SourceState,
    /// A transition whose target's two most significant bits read `10` is
    /// redirected to `0ⁿ`.
    Transition,
}

fn memory(n: usize, reset: Option<ForgetfulReset>, max_states: usize) -> Result<Dfa> {
    require(n < 32, || format!("memory depth {n} exceeds 31"))?;
    let states = check_budget("memory automaton (states)", 1u128 << n, max_states)?;
    let mask = (states - 1) as u32;
    let top = 1u32 << (n - 1);
    let reset_mask = if n >= 2 { top | top >> 1 } else { 0 };
    let resets = |s: u32| s & reset_mask == top;
    let delta = [0u32, 1]
        .iter()
        .map(|&v| {
            (0..states as u32)
                .map(|s| match reset {
                    Some(ForgetfulReset::SourceState) if resets(s) => v & mask,
                    Some(ForgetfulReset::Transition) if resets(((s << 1) | v) & mask) => 0,
                    _ => ((s << 1) | v) & mask,
                })
                .collect()
        })
        .collect();
    let accepting = bitset_from(states, (top as usize)..states);
    Dfa::new(delta, accepting, Some(0))?.with_letter_names(vec!["f".into(), "t".into()])
}

/// Perfect memory of depth `n`: the state holds the last `n` bits read
/// (most recent bit least significant), letters `f = 0` and `t = 1`,
/// initial `0ⁿ`, accepting iff the oldest remembered bit is 1.
pub fn gen_memory_perfect(n: usize) -> Result<Dfa> {
    require(n >= 1, || "memory depth must be at least 1".into())?;
    memory(n, None, DEFAULT_MAX_STATES)
}

/// Forgetful memory with the default [`ForgetfulReset::SourceState`] reset.
pub fn gen_memory_forgetful(n: usize) -> Result<Dfa> {
    gen_memory_forgetful_with(n, ForgetfulReset::SourceState)
}

/// Like [`gen_memory_perfect`], but the memory is wiped when its two most
/// significant bits read `10`.
pub fn gen_memory_forgetful_with(n: usize, reset: ForgetfulReset) -> Result<Dfa> {
    require(n >= 2, || "forgetful memory depth must be at least 2".into())?;
    memory(n, Some(reset), DEFAULT_MAX_STATES)
}

pub(crate) fn gen_memory_within(n: usize, forgetful: bool, max_states: usize) -> Result<Dfa> {
    require(n >= 1 + usize::from(forgetful), || {
        format!("memory depth {n} is too small")
    })?;
    memory(n, forgetful.then_some(ForgetfulReset::SourceState), max_states)
}
