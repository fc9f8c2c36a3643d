use std::cmp::Ordering;

use super::{notify, Algorithm, Limits, Observer, RefinementReport};
use crate::automata::{Dfa, Partition};
use crate::error::Result;
use crate::par;

/// Sorting-based partition refinement.
///
/// Each pass computes the successor-block signature of every state, sorts
/// the states by `(block, signature)`, and renumbers blocks by marking
/// boundaries between unequal neighbours and taking an inclusive scan. A
/// block may split into any number of sub-blocks per pass.
pub fn sort_pr(dfa: &Dfa) -> RefinementReport {
    run(dfa, &Limits::default(), None).expect("no deadline set")
}

pub(crate) fn run(
    dfa: &Dfa,
    limits: &Limits,
    mut observer: Option<Observer<'_>>,
) -> Result<RefinementReport> {
    let n = dfa.num_states;
    let k = dfa.alphabet_size;
    let mut block: Vec<u32> = par::map(n, |q| u32::from(!dfa.accepting.contains(q)));
    let accepting = dfa.num_accepting();
    let mut num_blocks = usize::from(accepting > 0) + usize::from(accepting < n);
    notify(&mut observer, 0, num_blocks, &block);

    let mut state: Vec<u32> = (0..n as u32).collect();
    let mut iterations = 0;
    while n > 0 {
        limits.check_deadline()?;
        let signature: Vec<u32> = par::map(n * k, |i| {
            let (q, a) = (i / k, i % k);
            block[dfa.delta[a][q] as usize]
        });
        let sig = |q: u32| &signature[q as usize * k..(q as usize + 1) * k];
        let compare = |&p: &u32, &q: &u32| -> Ordering {
            block[p as usize]
                .cmp(&block[q as usize])
                .then_with(|| sig(p).cmp(sig(q)))
        };
        par::sort_stable_by(&mut state, compare);

        // Adjacent difference with ARE_NEQ, then inclusive scan.
        let boundary = par::map(n, |i| {
            i > 0 && compare(&state[i], &state[i - 1]) != Ordering::Equal
        });
        let mut new_block = vec![0u32; n];
        let mut label = 0u32;
        for (i, &b) in boundary.iter().enumerate() {
            label += u32::from(b);
            new_block[state[i] as usize] = label;
        }
        let new_count = label as usize + 1;
        if new_count == num_blocks {
            break;
        }
        block = new_block;
        num_blocks = new_count;
        iterations += 1;
        notify(&mut observer, iterations, num_blocks, &block);
    }
    Ok(RefinementReport {
        partition: Partition::from_labels(&block),
        refining_iterations: iterations,
        closure_iterations: 0,
        algorithm: Algorithm::SortPr,
    })
}
