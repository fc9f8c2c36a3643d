//! Partition-refinement minimisers.
//!
//! Every minimiser returns a [`RefinementReport`] whose partition is the
//! language-equivalence of the input's states. The parallel-style algorithms
//! follow the bulk-synchronous contract of [`crate::par`]: each step reads the
//! state left by the previous step, and the only cells written concurrently
//! are leader-election slots.

mod moore;
mod naive;
mod sort;
mod trans;
mod transpr;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

pub use moore::moore_minimize;
pub use naive::{naive_pr, naive_pr_fused};
pub use sort::sort_pr;
pub use trans::{trans_minimize, trans_minimize_with};
pub use transpr::{build_transitive_alphabet, trans_pr, transitive_depth};

use crate::automata::{ApartMatrix, Dfa, Partition};
use crate::error::{Error, Result};

/// Which minimiser to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Moore,
    Trans,
    NaivePr,
    NaivePrFused,
    SortPr,
    TransPr,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [
        Algorithm::Moore,
        Algorithm::Trans,
        Algorithm::NaivePr,
        Algorithm::NaivePrFused,
        Algorithm::SortPr,
        Algorithm::TransPr,
    ];

    /// Short command-line name.
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Moore => "moore",
            Algorithm::Trans => "trans",
            Algorithm::NaivePr => "naive",
            Algorithm::NaivePrFused => "naive-fused",
            Algorithm::SortPr => "sort",
            Algorithm::TransPr => "transpr",
        }
    }

    /// Report tag.
    pub fn tag(self) -> &'static str {
        match self {
            Algorithm::Moore => "moore",
            Algorithm::Trans => "trans",
            Algorithm::NaivePr => "naive_pr",
            Algorithm::NaivePrFused => "naive_pr_fused",
            Algorithm::SortPr => "sort_pr",
            Algorithm::TransPr => "trans_pr",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s || a.tag() == s)
            .ok_or_else(|| {
                Error::InvalidParameter(format!(
                    "unknown algorithm `{s}` (expected one of moore, trans, naive, naive-fused, sort, transpr)"
                ))
            })
    }
}

/// Which of several concurrent leader-election writes wins.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum ElectionPolicy {
    /// The candidate with the smallest state id.
    #[default]
    MinIndex,
    /// A pseudo-random candidate, reproducible from the seed.
    Arbitrary(u64),
}

impl FromStr for ElectionPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "min" || s == "min-index" || s == "min_index" {
            return Ok(ElectionPolicy::MinIndex);
        }
        s.strip_prefix("arbitrary:")
            .or_else(|| s.strip_prefix("seed:"))
            .and_then(|seed| seed.parse().ok())
            .map(ElectionPolicy::Arbitrary)
            .ok_or_else(|| {
                Error::InvalidParameter(format!(
                    "unknown election policy `{s}` (expected `min` or `arbitrary:<seed>`)"
                ))
            })
    }
}

/// Outcome of a minimiser run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefinementReport {
    pub partition: Partition,
    /// Outer passes that changed the partition; the confirming pass is not counted.
    pub refining_iterations: usize,
    /// Closure or doubling passes (`trans`, `trans_pr`); zero otherwise.
    pub closure_iterations: usize,
    pub algorithm: Algorithm,
}

impl RefinementReport {
    pub fn output_size(&self) -> usize {
        self.partition.num_blocks
    }
}

/// Resource limits shared by all minimisers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    pub deadline: Option<Instant>,
    /// Cap on `|Q|⁴`, the cell count of the pair-graph reachability matrix.
    pub max_reach_cells: u64,
    /// Cap on the alphabet size of the partially closed automaton.
    pub max_alphabet: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            deadline: None,
            max_reach_cells: 1 << 32,
            max_alphabet: 1 << 16,
        }
    }
}

impl Limits {
    pub(crate) fn check_deadline(&self) -> Result<()> {
        match self.deadline {
            Some(deadline) if Instant::now() >= deadline => Err(Error::Timeout),
            _ => Ok(()),
        }
    }
}

/// Partition state after a refinement pass.
#[derive(Clone, Copy, Debug)]
pub struct Snapshot<'a> {
    /// 0 for the initial partition, then one per pass.
    pub iteration: usize,
    pub num_blocks: usize,
    /// Block label per state. Labels are leader state ids for the
    /// leader-election algorithms and dense ids otherwise.
    pub labels: &'a [u32],
}

/// Receives a [`Snapshot`] after initialisation and after each pass.
pub type Observer<'o> = &'o mut dyn FnMut(Snapshot<'_>);

pub(crate) fn notify(
    observer: &mut Option<Observer<'_>>,
    iteration: usize,
    num_blocks: usize,
    labels: &[u32],
) {
    if let Some(f) = observer.as_mut() {
        f(Snapshot {
            iteration,
            num_blocks,
            labels,
        });
    }
}

/// Runs `algorithm` on `dfa`.
///
/// `policy` only affects [`Algorithm::NaivePr`] and [`Algorithm::TransPr`].
pub fn minimize(
    dfa: &Dfa,
    algorithm: Algorithm,
    policy: ElectionPolicy,
    limits: &Limits,
) -> Result<RefinementReport> {
    minimize_observed(dfa, algorithm, policy, limits, None)
}

/// [`minimize`] with a per-pass observer. The pair-graph algorithm reports
/// the partition induced by its current apartness relation, which is only an
/// equivalence once the closure has converged, so it is not observed.
pub fn minimize_observed(
    dfa: &Dfa,
    algorithm: Algorithm,
    policy: ElectionPolicy,
    limits: &Limits,
    observer: Option<Observer<'_>>,
) -> Result<RefinementReport> {
    match algorithm {
        Algorithm::Moore => moore::run(dfa, limits, observer),
        Algorithm::Trans => trans_minimize_with(dfa, limits).map(|(report, _)| report),
        Algorithm::NaivePr => naive::run(dfa, policy, limits, observer),
        Algorithm::NaivePrFused => naive::run_fused(dfa, limits, observer),
        Algorithm::SortPr => sort::run(dfa, limits, observer),
        Algorithm::TransPr => transpr::run(dfa, policy, limits, observer),
    }
}

/// Convenience wrapper returning only the apartness matrix of the pair-graph algorithm.
pub fn apart_matrix(dfa: &Dfa, limits: &Limits) -> Result<ApartMatrix> {
    trans_minimize_with(dfa, limits).map(|(_, m)| m)
}

/// Report for automata whose accepting set is empty or everything.
pub(crate) fn trivial_report(n: usize, algorithm: Algorithm) -> RefinementReport {
    RefinementReport {
        partition: Partition::coarsest(n),
        refining_iterations: 0,
        closure_iterations: 0,
        algorithm,
    }
}
