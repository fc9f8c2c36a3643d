//! Brute-force oracles shared by the integration tests. They deliberately
//! avoid the library's algorithms.

#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use dfapar::{Dfa, Lts, Partition};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Language equivalence of states by backward propagation of apartness over
/// the pair graph.
pub fn distinguishability_partition(dfa: &Dfa) -> Partition {
    let n = dfa.num_states;
    let idx = |p: usize, q: usize| p * n + q;
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n * n];
    for row in &dfa.delta {
        for p in 0..n {
            for q in 0..n {
                preds[idx(row[p] as usize, row[q] as usize)].push(idx(p, q));
            }
        }
    }
    let mut apart = vec![false; n * n];
    let mut queue = VecDeque::new();
    for p in 0..n {
        for q in 0..n {
            if dfa.accepting.contains(p) != dfa.accepting.contains(q) {
                apart[idx(p, q)] = true;
                queue.push_back(idx(p, q));
            }
        }
    }
    while let Some(s) = queue.pop_front() {
        for &t in &preds[s] {
            if !apart[t] {
                apart[t] = true;
                queue.push_back(t);
            }
        }
    }
    let labels: Vec<usize> = (0..n)
        .map(|q| (0..n).find(|&p| !apart[idx(p, q)]).unwrap())
        .collect();
    Partition::from_labels(&labels)
}

/// Whether `p` and `q` accept the same words, by the pairwise oracle.
pub fn equivalent_states(dfa: &Dfa, p: usize, q: usize) -> bool {
    distinguishability_partition(dfa).same_block(p, q)
}

/// Every word over `0..k` of length exactly `len`.
pub fn words_of_length(k: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..k).map(move |a| {
                    let mut w = w.clone();
                    w.push(a);
                    w
                })
            })
            .collect();
    }
    out
}

/// Every word over `0..k` of length at most `len`, shortest first.
pub fn words_up_to(k: usize, len: usize) -> Vec<Vec<usize>> {
    (0..=len).flat_map(|l| words_of_length(k, l)).collect()
}

pub fn accepts(dfa: &Dfa, word: &[usize]) -> bool {
    let mut q = dfa.initial.expect("initial state") as usize;
    for &a in word {
        q = dfa.delta[a][q] as usize;
    }
    dfa.accepting.contains(q)
}

/// Number of states reachable from the initial state, by plain BFS.
pub fn reachable_count(dfa: &Dfa) -> usize {
    let mut seen = vec![false; dfa.num_states];
    let mut queue = VecDeque::from([dfa.initial.expect("initial state") as usize]);
    seen[queue[0]] = true;
    let mut count = 1;
    while let Some(q) = queue.pop_front() {
        for row in &dfa.delta {
            let t = row[q] as usize;
            if !seen[t] {
                seen[t] = true;
                count += 1;
                queue.push_back(t);
            }
        }
    }
    count
}

/// Whether the LTS has a path from its initial state labelled by `word`.
pub fn lts_has_trace(lts: &Lts, word: &[&str]) -> bool {
    fn dfs(lts: &Lts, state: u32, word: &[&str]) -> bool {
        let Some((first, rest)) = word.split_first() else {
            return true;
        };
        lts.transitions
            .iter()
            .filter(|t| t.from == state && lts.labels[t.label as usize] == *first)
            .any(|t| dfs(lts, t.to, rest))
    }
    dfs(lts, lts.initial, word)
}

/// Runs a word of label names through a DFA with letter names; unknown
/// labels are rejected.
pub fn dfa_accepts_labels(dfa: &Dfa, word: &[&str]) -> bool {
    let names = dfa.letter_names.as_ref().expect("letter names");
    let mut q = dfa.initial.expect("initial state") as usize;
    for label in word {
        match names.iter().position(|n| n == label) {
            Some(a) => q = dfa.delta[a][q] as usize,
            None => return false,
        }
    }
    dfa.accepting.contains(q)
}

/// All label words of length at most `len` over `labels`.
pub fn label_words<'a>(labels: &'a [String], len: usize) -> Vec<Vec<&'a str>> {
    words_up_to(labels.len(), len)
        .into_iter()
        .map(|w| w.into_iter().map(|a| labels[a].as_str()).collect())
        .collect()
}

/// Random renumbering of the states.
pub fn shuffle_states(dfa: &Dfa, seed: u64) -> Dfa {
    let mut perm: Vec<u32> = (0..dfa.num_states as u32).collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    dfa.permute_states(&perm)
}

/// Random, possibly nondeterministic and incomplete LTS.
pub fn random_lts(seed: u64, max_states: usize, max_labels: usize, max_edges: usize) -> Lts {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(1..=max_states);
    let labels = rng.random_range(1..=max_labels);
    let edges = rng.random_range(0..=max_edges);
    let mut lts = Lts::new(n, rng.random_range(0..n as u32));
    for _ in 0..edges {
        let from = rng.random_range(0..n as u32);
        let to = rng.random_range(0..n as u32);
        let label = ["a", "b", "c", "d"][rng.random_range(0..labels)];
        lts.add(from, label, to);
    }
    lts
}

/// Distinct sets of blocks, for comparing partitions irrespective of ids.
pub fn block_sets(p: &Partition) -> BTreeSet<Vec<u32>> {
    p.blocks().into_iter().collect()
}
