use std::sync::atomic::{AtomicU32, AtomicU64, Ordering};

use super::{notify, trivial_report, Algorithm, ElectionPolicy, Limits, Observer, RefinementReport};
use crate::automata::{Dfa, Partition};
use crate::error::Result;
use crate::par;

const NO_LEADER: u32 = u32::MAX;
const NO_CLAIM: u64 = u64::MAX;

/// Leader-election partition refinement.
///
/// Each block is named by a leader state. In every pass, the states whose
/// successor blocks differ from their leader's elect one of themselves as
/// the new leader and move to its block.
pub fn naive_pr(dfa: &Dfa, policy: ElectionPolicy) -> RefinementReport {
    run(dfa, policy, &Limits::default(), None).expect("no deadline set")
}

/// [`naive_pr`] with election and reassignment fused into one pass using a
/// compare-and-swap claim on the new-leader slot.
pub fn naive_pr_fused(dfa: &Dfa) -> RefinementReport {
    run_fused(dfa, &Limits::default(), None).expect("no deadline set")
}

/// Initial leaders: the smallest accepting and the smallest rejecting state.
/// `None` when one of the two classes is empty.
fn initial_blocks(dfa: &Dfa) -> Option<Vec<u32>> {
    let n = dfa.num_states;
    let qf = dfa.accepting.ones().next()?;
    let qn = dfa.accepting.zeroes().next()?;
    Some(par::map(n, |q| {
        if dfa.accepting.contains(q) {
            qf as u32
        } else {
            qn as u32
        }
    }))
}

#[inline]
fn differs_from_leader(dfa: &Dfa, block: &[u32], q: usize) -> bool {
    let leader = block[q] as usize;
    dfa.delta
        .iter()
        .any(|row| block[row[q] as usize] != block[row[leader] as usize])
}

fn mix(seed: u64, iteration: u64, q: u64) -> u64 {
    let mut z = seed
        ^ iteration.wrapping_mul(0x9E37_79B9_7F4A_7C15)
        ^ q.wrapping_mul(0xD1B5_4A32_D192_ED03);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Election key: the smallest key among a block's candidates wins, and the
/// low half always recovers the state id.
#[inline]
fn election_key(policy: ElectionPolicy, iteration: usize, q: usize) -> u64 {
    match policy {
        ElectionPolicy::MinIndex => q as u64,
        ElectionPolicy::Arbitrary(seed) => {
            (u64::from(mix(seed, iteration as u64, q as u64) as u32) << 32) | q as u64
        }
    }
}

pub(crate) fn run(
    dfa: &Dfa,
    policy: ElectionPolicy,
    limits: &Limits,
    observer: Option<Observer<'_>>,
) -> Result<RefinementReport> {
    run_as(dfa, policy, limits, observer, Algorithm::NaivePr)
}

pub(crate) fn run_as(
    dfa: &Dfa,
    policy: ElectionPolicy,
    limits: &Limits,
    mut observer: Option<Observer<'_>>,
    algorithm: Algorithm,
) -> Result<RefinementReport> {
    let n = dfa.num_states;
    let Some(mut block) = initial_blocks(dfa) else {
        let report = trivial_report(n, algorithm);
        notify(&mut observer, 0, report.partition.num_blocks, &report.partition.block_of);
        return Ok(report);
    };
    let mut num_blocks = 2;
    notify(&mut observer, 0, num_blocks, &block);

    let new_leader: Vec<AtomicU64> = (0..n).map(|_| AtomicU64::new(NO_CLAIM)).collect();
    let mut iterations = 0;
    loop {
        limits.check_deadline()?;
        // Election: every state that disagrees with its leader bids for the
        // new-leader slot of its block.
        let differs = par::map(n, |q| {
            let d = differs_from_leader(dfa, &block, q);
            if d {
                new_leader[block[q] as usize]
                    .fetch_min(election_key(policy, iterations, q), Ordering::Relaxed);
            }
            d
        });
        // Split: disagreeing states join the elected leader's block.
        let next = par::map(n, |q| {
            if differs[q] {
                new_leader[block[q] as usize].load(Ordering::Relaxed) as u32
            } else {
                block[q]
            }
        });
        let split = par::count(n, |l| {
            new_leader[l].swap(NO_CLAIM, Ordering::Relaxed) != NO_CLAIM
        });
        if split == 0 {
            break;
        }
        block = next;
        num_blocks += split;
        iterations += 1;
        notify(&mut observer, iterations, num_blocks, &block);
    }
    Ok(RefinementReport {
        partition: Partition::from_leaders(&block),
        refining_iterations: iterations,
        closure_iterations: 0,
        algorithm,
    })
}

pub(crate) fn run_fused(
    dfa: &Dfa,
    limits: &Limits,
    mut observer: Option<Observer<'_>>,
) -> Result<RefinementReport> {
    let n = dfa.num_states;
    let Some(mut block) = initial_blocks(dfa) else {
        let report = trivial_report(n, Algorithm::NaivePrFused);
        notify(&mut observer, 0, report.partition.num_blocks, &report.partition.block_of);
        return Ok(report);
    };
    let mut num_blocks = 2;
    notify(&mut observer, 0, num_blocks, &block);

    let new_leader: Vec<AtomicU32> = (0..n).map(|_| AtomicU32::new(NO_LEADER)).collect();
    let mut iterations = 0;
    loop {
        limits.check_deadline()?;
        let next = par::map(n, |q| {
            let leader = block[q] as usize;
            if !differs_from_leader(dfa, &block, q) {
                return block[q];
            }
            match new_leader[leader].compare_exchange(
                NO_LEADER,
                q as u32,
                Ordering::AcqRel,
                Ordering::Acquire,
            ) {
                Ok(_) => q as u32,
                Err(winner) => winner,
            }
        });
        let split = par::count(n, |l| {
            new_leader[l].swap(NO_LEADER, Ordering::Relaxed) != NO_LEADER
        });
        if split == 0 {
            break;
        }
        block = next;
        num_blocks += split;
        iterations += 1;
        notify(&mut observer, iterations, num_blocks, &block);
    }
    Ok(RefinementReport {
        partition: Partition::from_leaders(&block),
        refining_iterations: iterations,
        closure_iterations: 0,
        algorithm: Algorithm::NaivePrFused,
    })
}
