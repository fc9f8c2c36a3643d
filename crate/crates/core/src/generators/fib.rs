use std::fmt;

use super::{check_budget, require, DEFAULT_MAX_STATES};
use crate::automata::{bitset_from, Dfa};
use crate::error::Result;

/// Fibonacci word `w_m`: `w_0 = 1`, `w_1 = 0`, `w_{m+1} = w_m w_{m-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibWord {
    pub index: usize,
    pub bits: Vec<bool>,
}

impl fmt::Display for FibWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Length of `w_m`, i.e. `F(m+1)` with `F(1) = F(2) = 1`.
fn word_len(m: usize) -> u128 {
    let (mut prev, mut cur) = (1u128, 1u128);
    for _ in 0..m.min(180) {
        (prev, cur) = (cur, cur.saturating_add(prev));
    }
    prev
}

pub fn fib_word(m: usize) -> Result<FibWord> {
    fib_word_within(m, DEFAULT_MAX_STATES)
}

pub(crate) fn fib_word_within(m: usize, max_len: usize) -> Result<FibWord> {
    check_budget("Fibonacci word length", word_len(m), max_len)?;
    let (mut older, mut newer) = (vec![true], vec![false]);
    if m == 0 {
        newer = older.clone();
    }
    for _ in 1..m {
        let mut next = newer.clone();
        next.extend_from_slice(&older);
        older = std::mem::replace(&mut newer, next);
    }
    Ok(FibWord {
        index: m,
        bits: newer,
    })
}

/// Unary cyclic DFA over `w_m`: state `i` steps to `i + 1 mod |w_m|` and is
/// accepting iff `w_m[i] = 1`.
pub fn gen_fib(m: usize) -> Result<Dfa> {
    gen_fib_within(m, DEFAULT_MAX_STATES)
}

pub(crate) fn gen_fib_within(m: usize, max_states: usize) -> Result<Dfa> {
    require(m >= 2, || format!("Fibonacci word index must be at least 2, got {m}"))?;
    let word = fib_word_within(m, max_states)?;
    let n = word.bits.len();
    let delta = vec![(0..n as u32).map(|q| (q + 1) % n as u32).collect()];
    let accepting = bitset_from(n, (0..n).filter(|&i| word.bits[i]));
    Dfa::new(delta, accepting, Some(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words() {
        let w: Vec<String> = (0..6).map(|m| fib_word(m).unwrap().to_string()).collect();
        assert_eq!(w, ["1", "0", "01", "010", "01001", "01001010"]);
    }

    #[test]
    fn lengths_follow_fibonacci() {
        for m in 2..20 {
            let len = |m| fib_word(m).unwrap().bits.len();
            assert_eq!(len(m), len(m - 1) + len(m - 2));
            assert_eq!(len(m) as u128, word_len(m));
        }
        assert_eq!(word_len(19), 6765);
    }

    #[test]
    fn fib5() {
        let dfa = gen_fib(5).unwrap();
        assert_eq!(dfa.num_states, 8);
        assert_eq!(dfa.accepting.ones().collect::<Vec<_>>(), vec![1, 4, 6]);
        assert_eq!(dfa.step(7, 0), 0);
        assert!(gen_fib(1).is_err());
    }
}
