use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// State identifier. States of an `n`-state automaton are `0..n`.
pub type StateId = u32;

/// A word as a sequence of letter ids.
pub type Word = Vec<usize>;

/// Largest supported state count; keeps every id strictly below `u32::MAX`
/// so that `u32::MAX` is free as a sentinel.
pub const MAX_STATES: usize = u32::MAX as usize;

/// Deterministic finite automaton with a total transition function.
///
/// Transitions are stored letter-major: `delta[a][q]` is the `a`-successor
/// of `q`. The initial state is optional because some benchmark families
/// (bit-splitters) are only meaningful for minimisation and have none.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    pub num_states: usize,
    pub alphabet_size: usize,
    pub delta: Vec<Vec<StateId>>,
    pub accepting: FixedBitSet,
    pub initial: Option<StateId>,
    pub letter_names: Option<Vec<String>>,
}

/// A broken [`Dfa`] invariant, naming the offending field and index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    TooManyStates { num_states: usize },
    DeltaRows { expected: usize, got: usize },
    DeltaRowLength { letter: usize, expected: usize, got: usize },
    TargetOutOfRange { letter: usize, state: usize, target: StateId },
    AcceptingLength { expected: usize, got: usize },
    InitialOutOfRange { initial: StateId },
    LetterNames { expected: usize, got: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TooManyStates { num_states } => {
                write!(f, "num_states: {num_states} exceeds the 32-bit id space")
            }
            Violation::DeltaRows { expected, got } => {
                write!(f, "delta: expected {expected} letter rows, found {got}")
            }
            Violation::DeltaRowLength {
                letter,
                expected,
                got,
            } => write!(f, "delta[{letter}]: expected {expected} entries, found {got}"),
            Violation::TargetOutOfRange {
                letter,
                state,
                target,
            } => write!(f, "delta[{letter}][{state}]: target {target} is out of range"),
            Violation::AcceptingLength { expected, got } => {
                write!(f, "accepting: expected {expected} bits, found {got}")
            }
            Violation::InitialOutOfRange { initial } => {
                write!(f, "initial: state {initial} is out of range")
            }
            Violation::LetterNames { expected, got } => {
                write!(f, "letter_names: expected {expected} names, found {got}")
            }
        }
    }
}

/// Lists every broken invariant of `dfa`; empty iff the automaton is well formed.
pub fn validate(dfa: &Dfa) -> Vec<Violation> {
    let n = dfa.num_states;
    let k = dfa.alphabet_size;
    let mut out = Vec::new();
    if n > MAX_STATES - 1 {
        out.push(Violation::TooManyStates { num_states: n });
    }
    if dfa.delta.len() != k {
        out.push(Violation::DeltaRows {
            expected: k,
            got: dfa.delta.len(),
        });
    }
    for (letter, row) in dfa.delta.iter().enumerate() {
        if row.len() != n {
            out.push(Violation::DeltaRowLength {
                letter,
                expected: n,
                got: row.len(),
            });
        }
        for (state, &target) in row.iter().enumerate() {
            if target as usize >= n {
                out.push(Violation::TargetOutOfRange {
                    letter,
                    state,
                    target,
                });
            }
        }
    }
    if dfa.accepting.len() != n {
        out.push(Violation::AcceptingLength {
            expected: n,
            got: dfa.accepting.len(),
        });
    }
    if let Some(initial) = dfa.initial {
        if initial as usize >= n {
            out.push(Violation::InitialOutOfRange { initial });
        }
    }
    if let Some(names) = &dfa.letter_names {
        if names.len() != k {
            out.push(Violation::LetterNames {
                expected: k,
                got: names.len(),
            });
        }
    }
    out
}

impl Dfa {
    /// Builds and validates an automaton.
    pub fn new(
        delta: Vec<Vec<StateId>>,
        accepting: FixedBitSet,
        initial: Option<StateId>,
    ) -> Result<Self> {
        let dfa = Dfa {
            num_states: accepting.len(),
            alphabet_size: delta.len(),
            delta,
            accepting,
            initial,
            letter_names: None,
        };
        dfa.validated()
    }

    /// Returns `self` if it satisfies every invariant.
    pub fn validated(self) -> Result<Self> {
        let violations = validate(&self);
        if violations.is_empty() {
            Ok(self)
        } else {
            Err(Error::InvalidDfa(violations))
        }
    }

    pub fn with_letter_names(mut self, names: Vec<String>) -> Result<Self> {
        self.letter_names = Some(names);
        self.validated()
    }

    #[inline]
    pub fn step(&self, state: StateId, letter: usize) -> StateId {
        self.delta[letter][state as usize]
    }

    #[inline]
    pub fn is_accepting(&self, state: StateId) -> bool {
        self.accepting.contains(state as usize)
    }

    /// Runs `word` from `state`.
    pub fn run_from(&self, state: StateId, word: &[usize]) -> StateId {
        word.iter().fold(state, |q, &a| self.step(q, a))
    }

    /// Whether the word is accepted from the initial state.
    pub fn accepts(&self, word: &[usize]) -> Result<bool> {
        let initial = self.initial.ok_or(Error::MissingInitial)?;
        Ok(self.is_accepting(self.run_from(initial, word)))
    }

    pub fn require_initial(&self) -> Result<StateId> {
        self.initial.ok_or(Error::MissingInitial)
    }

    pub fn num_accepting(&self) -> usize {
        self.accepting.count_ones(..)
    }

    /// Display name for a letter: its name when present, its id otherwise.
    pub fn letter_label(&self, letter: usize) -> String {
        match &self.letter_names {
            Some(names) => names[letter].clone(),
            None => letter.to_string(),
        }
    }

    /// Renders a word as space-separated letter labels.
    pub fn format_word(&self, word: &[usize]) -> String {
        word.iter()
            .map(|&a| self.letter_label(a))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Renumbers states: state `q` becomes `perm[q]`. `perm` must be a
    /// permutation of `0..n`.
    pub fn permute_states(&self, perm: &[StateId]) -> Dfa {
        let n = self.num_states;
        assert_eq!(perm.len(), n, "permutation length");
        let mut delta = vec![vec![0; n]; self.alphabet_size];
        let mut accepting = FixedBitSet::with_capacity(n);
        for q in 0..n {
            let p = perm[q] as usize;
            for (a, row) in self.delta.iter().enumerate() {
                delta[a][p] = perm[row[q] as usize];
            }
            accepting.set(p, self.accepting.contains(q));
        }
        Dfa {
            num_states: n,
            alphabet_size: self.alphabet_size,
            delta,
            accepting,
            initial: self.initial.map(|q| perm[q as usize]),
            letter_names: self.letter_names.clone(),
        }
    }

    /// Reorders letters: new letter `i` is old letter `order[i]`.
    pub fn permute_letters(&self, order: &[usize]) -> Dfa {
        Dfa {
            num_states: self.num_states,
            alphabet_size: order.len(),
            delta: order.iter().map(|&a| self.delta[a].clone()).collect(),
            accepting: self.accepting.clone(),
            initial: self.initial,
            letter_names: self
                .letter_names
                .as_ref()
                .map(|names| order.iter().map(|&a| names[a].clone()).collect()),
        }
    }
}

/// Bitset of length `len` containing `members`.
pub fn bitset_from(len: usize, members: impl IntoIterator<Item = usize>) -> FixedBitSet {
    let mut set = FixedBitSet::with_capacity(len);
    for q in members {
        set.insert(q);
    }
    set
}
