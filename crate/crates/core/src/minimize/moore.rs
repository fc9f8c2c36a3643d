use std::collections::HashMap;

use super::{notify, Algorithm, Limits, Observer, RefinementReport};
use crate::automata::{Dfa, Partition};
use crate::error::Result;

/// Sequential signature refinement: split blocks by the blocks of their
/// successors until nothing changes.
pub fn moore_minimize(dfa: &Dfa) -> RefinementReport {
    run(dfa, &Limits::default(), None).expect("no deadline set")
}

pub(crate) fn run(
    dfa: &Dfa,
    limits: &Limits,
    mut observer: Option<Observer<'_>>,
) -> Result<RefinementReport> {
    let n = dfa.num_states;
    let k = dfa.alphabet_size;
    let initial: Vec<u32> = (0..n).map(|q| u32::from(!dfa.accepting.contains(q))).collect();
    let mut partition = Partition::from_labels(&initial);
    notify(&mut observer, 0, partition.num_blocks, &partition.block_of);

    let width = k + 1;
    let mut signature = vec![0u32; n * width];
    let mut iterations = 0;
    loop {
        limits.check_deadline()?;
        for q in 0..n {
            let row = &mut signature[q * width..(q + 1) * width];
            row[0] = partition.block_of[q];
            for (a, delta) in dfa.delta.iter().enumerate() {
                row[a + 1] = partition.block_of[delta[q] as usize];
            }
        }
        let mut ids: HashMap<&[u32], u32> = HashMap::with_capacity(partition.num_blocks * 2);
        let block_of: Vec<u32> = signature
            .chunks_exact(width.max(1))
            .take(n)
            .map(|sig| {
                let next = ids.len() as u32;
                *ids.entry(sig).or_insert(next)
            })
            .collect();
        let num_blocks = ids.len();
        if num_blocks == partition.num_blocks {
            break;
        }
        iterations += 1;
        partition = Partition {
            block_of,
            num_blocks,
        };
        notify(&mut observer, iterations, num_blocks, &partition.block_of);
    }
    Ok(RefinementReport {
        partition,
        refining_iterations: iterations,
        closure_iterations: 0,
        algorithm: Algorithm::Moore,
    })
}
