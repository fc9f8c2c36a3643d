use thiserror::Error;

use crate::automata::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("invalid automaton: {}", format_violations(.0))]
    InvalidDfa(Vec<Violation>),

    #[error("automaton has no initial state")]
    MissingInitial,

    #[error("{count} state(s) are unreachable from the initial state")]
    Unreachable { count: usize },

    #[error("alphabet sizes differ: {left} vs {right}")]
    AlphabetMismatch { left: usize, right: usize },

    #[error("letter names do not match: {0}")]
    LetterNames(String),

    #[error("partition has {got} entries but the automaton has {expected} states")]
    PartitionLength { expected: usize, got: usize },

    #[error("block {block} mixes accepting and non-accepting states")]
    MixedAcceptance { block: usize },

    #[error("block {block} is not closed under letter {letter}: states {left} and {right} disagree")]
    NotClosed {
        block: usize,
        letter: usize,
        left: u32,
        right: u32,
    },

    #[error("apartness complement is not transitive at states {0}, {1}, {2}")]
    NonTransitiveApart(usize, usize, usize),

    #[error("{what} needs {required} but the budget is {limit}")]
    ResourceExceeded {
        what: &'static str,
        required: u64,
        limit: u64,
    },

    #[error("deadline exceeded")]
    Timeout,

    #[error("{0}")]
    InvalidParameter(String),

    #[error("transition system is not deterministic: state {state} has two `{label}` transitions")]
    Nondeterministic { state: usize, label: String },
}

impl Error {
    pub(crate) fn parse(line: usize, reason: impl Into<String>) -> Self {
        Error::Parse {
            line,
            reason: reason.into(),
        }
    }

    pub fn is_resource(&self) -> bool {
        matches!(self, Error::ResourceExceeded { .. })
    }
}

fn format_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}
