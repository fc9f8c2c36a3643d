use std::collections::VecDeque;

use fixedbitset::FixedBitSet;

use super::{Dfa, Partition, StateId};
use crate::error::{Error, Result};

/// Marks states removed by [`prune_unreachable`].
pub const UNREACHABLE: StateId = StateId::MAX;

/// Collapses each block of `p` into one state.
///
/// Fails if a block mixes accepting and rejecting states or if two members
/// of a block have successors in different blocks.
pub fn quotient(dfa: &Dfa, p: &Partition) -> Result<Dfa> {
    let n = dfa.num_states;
    if p.len() != n {
        return Err(Error::PartitionLength {
            expected: n,
            got: p.len(),
        });
    }
    let m = p.num_blocks;
    let mut rep = vec![UNREACHABLE; m];
    for q in 0..n {
        let b = p.block_of[q] as usize;
        if b >= m {
            return Err(Error::InvalidParameter(format!(
                "partition block id {b} exceeds num_blocks {m}"
            )));
        }
        if rep[b] == UNREACHABLE {
            rep[b] = q as StateId;
        } else if dfa.accepting.contains(q) != dfa.is_accepting(rep[b]) {
            return Err(Error::MixedAcceptance { block: b });
        }
    }
    if let Some(b) = rep.iter().position(|&r| r == UNREACHABLE) {
        return Err(Error::InvalidParameter(format!("partition block {b} is empty")));
    }
    let mut delta = Vec::with_capacity(dfa.alphabet_size);
    for (a, row) in dfa.delta.iter().enumerate() {
        let mut out = vec![0; m];
        for (b, &r) in rep.iter().enumerate() {
            out[b] = p.block_of[row[r as usize] as usize];
        }
        for q in 0..n {
            let b = p.block_of[q] as usize;
            if p.block_of[row[q] as usize] != out[b] {
                return Err(Error::NotClosed {
                    block: b,
                    letter: a,
                    left: rep[b],
                    right: q as StateId,
                });
            }
        }
        delta.push(out);
    }
    let mut accepting = FixedBitSet::with_capacity(m);
    for (b, &r) in rep.iter().enumerate() {
        accepting.set(b, dfa.is_accepting(r));
    }
    Ok(Dfa {
        num_states: m,
        alphabet_size: dfa.alphabet_size,
        delta,
        accepting,
        initial: dfa.initial.map(|q| p.block_of[q as usize]),
        letter_names: dfa.letter_names.clone(),
    })
}

/// BFS order of the states reachable from `initial`, letters scanned in id order.
fn bfs_order(dfa: &Dfa, initial: StateId) -> (Vec<StateId>, Vec<StateId>) {
    let mut map = vec![UNREACHABLE; dfa.num_states];
    let mut order = Vec::new();
    let mut queue = VecDeque::new();
    map[initial as usize] = 0;
    order.push(initial);
    queue.push_back(initial);
    while let Some(q) = queue.pop_front() {
        for row in &dfa.delta {
            let t = row[q as usize];
            if map[t as usize] == UNREACHABLE {
                map[t as usize] = order.len() as StateId;
                order.push(t);
                queue.push_back(t);
            }
        }
    }
    (order, map)
}

fn restrict(dfa: &Dfa, order: &[StateId], map: &[StateId]) -> Dfa {
    let m = order.len();
    let delta = dfa
        .delta
        .iter()
        .map(|row| order.iter().map(|&q| map[row[q as usize] as usize]).collect())
        .collect();
    let mut accepting = FixedBitSet::with_capacity(m);
    for (i, &q) in order.iter().enumerate() {
        accepting.set(i, dfa.is_accepting(q));
    }
    Dfa {
        num_states: m,
        alphabet_size: dfa.alphabet_size,
        delta,
        accepting,
        initial: Some(0),
        letter_names: dfa.letter_names.clone(),
    }
}

/// Keeps the states reachable from the initial state, renumbered in BFS
/// order. The returned map sends old ids to new ids, or [`UNREACHABLE`].
pub fn prune_unreachable(dfa: &Dfa) -> Result<(Dfa, Vec<StateId>)> {
    let initial = dfa.require_initial()?;
    let (order, map) = bfs_order(dfa, initial);
    Ok((restrict(dfa, &order, &map), map))
}

/// Renumbers states in BFS order from the initial state. Two reachable
/// DFAs are isomorphic iff their canonical forms are equal.
pub fn canonical_form(dfa: &Dfa) -> Result<Dfa> {
    let initial = dfa.require_initial()?;
    let (order, map) = bfs_order(dfa, initial);
    if order.len() != dfa.num_states {
        return Err(Error::Unreachable {
            count: dfa.num_states - order.len(),
        });
    }
    Ok(restrict(dfa, &order, &map))
}
