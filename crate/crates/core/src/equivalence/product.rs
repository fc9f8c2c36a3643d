use std::collections::HashMap;
use std::time::Instant;

use super::visited::{pack, PairSet};
use crate::automata::{Dfa, StateId, Word};
use crate::error::{Error, Result};
use crate::par;

/// Which pairs count as failures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Fail where exactly one side accepts.
    Equivalence,
    /// Fail where the left side accepts and the right side rejects.
    Inclusion,
    /// Explore every reachable pair; report the first equivalence failure
    /// without stopping.
    Full,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Equivalent,
    Included,
    Counterexample(Word),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        !matches!(self, Verdict::Counterexample(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductResult {
    pub verdict: Verdict,
    /// Distinct pairs inserted into the visited set.
    pub explored_states: usize,
    /// Exploration waves completed.
    pub levels: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductOptions {
    /// Pair letters by name instead of by id. Both inputs need names and the
    /// name sets must coincide.
    pub match_letters_by_name: bool,
    /// Cap on the number of visited pairs.
    pub max_visited: usize,
    pub deadline: Option<Instant>,
}

impl Default for ProductOptions {
    fn default() -> Self {
        ProductOptions {
            match_letters_by_name: false,
            max_visited: 1 << 26,
            deadline: None,
        }
    }
}

/// Checks `L(a) = L(b)`.
pub fn check_equiv(a: &Dfa, b: &Dfa) -> Result<ProductResult> {
    explore_product(a, b, Mode::Equivalence, &ProductOptions::default())
}

/// Checks `L(a) ⊆ L(b)`.
pub fn check_inclusion(a: &Dfa, b: &Dfa) -> Result<ProductResult> {
    explore_product(a, b, Mode::Inclusion, &ProductOptions::default())
}

/// Letter `i` of `a` is paired with letter `map[i]` of `b`.
fn letter_map(a: &Dfa, b: &Dfa, by_name: bool) -> Result<Vec<usize>> {
    if !by_name {
        if a.alphabet_size != b.alphabet_size {
            return Err(Error::AlphabetMismatch {
                left: a.alphabet_size,
                right: b.alphabet_size,
            });
        }
        return Ok((0..a.alphabet_size).collect());
    }
    let (Some(left), Some(right)) = (&a.letter_names, &b.letter_names) else {
        return Err(Error::LetterNames(
            "name matching needs letter names on both automata".into(),
        ));
    };
    let index: HashMap<&str, usize> = right.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    if index.len() != right.len() {
        return Err(Error::LetterNames("right automaton repeats a letter name".into()));
    }
    let map: Vec<usize> = left
        .iter()
        .map(|name| {
            index
                .get(name.as_str())
                .copied()
                .ok_or_else(|| Error::LetterNames(format!("`{name}` only occurs on the left")))
        })
        .collect::<Result<_>>()?;
    let mut seen = vec![false; right.len()];
    for &m in &map {
        if std::mem::replace(&mut seen[m], true) {
            return Err(Error::LetterNames(format!(
                "left automaton repeats the letter name `{}`",
                right[m]
            )));
        }
    }
    if let Some(missing) = seen.iter().position(|s| !s) {
        return Err(Error::LetterNames(format!(
            "`{}` only occurs on the right",
            right[missing]
        )));
    }
    Ok(map)
}

#[derive(Clone, Copy)]
struct Record {
    a: StateId,
    b: StateId,
    parent: usize,
    letter: u32,
}

const ROOT: usize = usize::MAX;

fn word_to(records: &[Record], mut i: usize) -> Word {
    let mut word = Vec::new();
    while records[i].parent != ROOT {
        word.push(records[i].letter as usize);
        i = records[i].parent;
    }
    word.reverse();
    word
}

/// Explores the reachable part of `a × b` breadth-first.
pub fn explore_product(a: &Dfa, b: &Dfa, mode: Mode, options: &ProductOptions) -> Result<ProductResult> {
    let init_a = a.require_initial()?;
    let init_b = b.require_initial()?;
    let letters = letter_map(a, b, options.match_letters_by_name)?;
    let k = letters.len();

    let fails = |p: StateId, q: StateId| {
        let (fa, fb) = (a.is_accepting(p), b.is_accepting(q));
        match mode {
            Mode::Inclusion => fa && !fb,
            Mode::Equivalence | Mode::Full => fa != fb,
        }
    };
    let success = match mode {
        Mode::Inclusion => Verdict::Included,
        Mode::Equivalence | Mode::Full => Verdict::Equivalent,
    };

    let mut witness: Option<Word> = None;
    if fails(init_a, init_b) {
        if mode != Mode::Full {
            return Ok(ProductResult {
                verdict: Verdict::Counterexample(Vec::new()),
                explored_states: 0,
                levels: 0,
            });
        }
        witness = Some(Vec::new());
    }

    let mut visited = PairSet::with_capacity(64);
    visited.insert(pack(init_a, init_b));
    let mut records = vec![Record {
        a: init_a,
        b: init_b,
        parent: ROOT,
        letter: 0,
    }];
    let mut frontier_start = 0;
    let mut levels = 0;
    while frontier_start < records.len() {
        if let Some(deadline) = options.deadline {
            if Instant::now() >= deadline {
                return Err(Error::Timeout);
            }
        }
        let frontier: Vec<usize> = (frontier_start..records.len()).collect();
        visited.reserve(frontier.len().saturating_mul(k));
        let set = &visited;
        let discovered: Vec<Record> = {
            let records = &records;
            par::flat_map(&frontier, |&r| {
                let Record { a: p, b: q, .. } = records[r];
                letters.iter().enumerate().filter_map(move |(x, &y)| {
                    let (p2, q2) = (a.step(p, x), b.step(q, y));
                    set.insert(pack(p2, q2)).then_some(Record {
                        a: p2,
                        b: q2,
                        parent: r,
                        letter: x as u32,
                    })
                })
            })
        };
        levels += 1;
        frontier_start = records.len();
        records.extend(discovered);
        if visited.len() > options.max_visited {
            return Err(Error::ResourceExceeded {
                what: "visited pair set (pairs)",
                required: visited.len() as u64,
                limit: options.max_visited as u64,
            });
        }
        if witness.is_none() {
            if let Some(i) = (frontier_start..records.len()).find(|&i| fails(records[i].a, records[i].b)) {
                let word = word_to(&records, i);
                if mode != Mode::Full {
                    return Ok(ProductResult {
                        verdict: Verdict::Counterexample(word),
                        explored_states: visited.len(),
                        levels,
                    });
                }
                witness = Some(word);
            }
        }
    }
    Ok(ProductResult {
        verdict: witness.map_or(success, Verdict::Counterexample),
        explored_states: visited.len(),
        levels,
    })
}
