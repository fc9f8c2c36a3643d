use super::{naive, Algorithm, ElectionPolicy, Limits, Observer, RefinementReport};
use crate::automata::Dfa;
use crate::error::{Error, Result};
use crate::par;

/// `⌊log₂ n⌋`, and 0 for `n ≤ 1`.
pub fn transitive_depth(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        n.ilog2() as usize
    }
}

/// Adds letters `a^(2^i)` for every letter `a` and `i ∈ 0..=⌊log₂ n⌋`,
/// computed by pointer doubling.
///
/// Letter `a * (L + 1) + i` is `a^(2^i)`, so each original letter is
/// followed by its powers.
pub fn build_transitive_alphabet(dfa: &Dfa, limits: &Limits) -> Result<Dfa> {
    let n = dfa.num_states;
    let k = dfa.alphabet_size;
    let depth = transitive_depth(n);
    let size = k
        .checked_mul(depth + 1)
        .filter(|&s| s <= limits.max_alphabet)
        .ok_or(Error::ResourceExceeded {
            what: "partially closed alphabet (letters)",
            required: (k as u64).saturating_mul(depth as u64 + 1),
            limit: limits.max_alphabet as u64,
        })?;

    let mut delta = Vec::with_capacity(size);
    let mut names = Vec::with_capacity(size);
    for (a, row) in dfa.delta.iter().enumerate() {
        let base = match &dfa.letter_names {
            Some(names) => names[a].clone(),
            None if k == 1 => "a".to_string(),
            None => format!("a{a}"),
        };
        let mut current = row.clone();
        for i in 0..=depth {
            if i > 0 {
                limits.check_deadline()?;
                let prev = current;
                current = par::map(n, |q| prev[prev[q] as usize]);
            }
            names.push(format!("{base}^{}", 1u64 << i));
            delta.push(current.clone());
        }
    }
    Ok(Dfa {
        num_states: n,
        alphabet_size: size,
        delta,
        accepting: dfa.accepting.clone(),
        initial: dfa.initial,
        letter_names: Some(names),
    })
}

/// Leader-election refinement on the partially closed automaton.
///
/// The closure letters are words over the original alphabet, so the
/// resulting partition is the language equivalence of the original states.
pub fn trans_pr(dfa: &Dfa, policy: ElectionPolicy, limits: &Limits) -> Result<RefinementReport> {
    run(dfa, policy, limits, None)
}

pub(crate) fn run(
    dfa: &Dfa,
    policy: ElectionPolicy,
    limits: &Limits,
    observer: Option<Observer<'_>>,
) -> Result<RefinementReport> {
    let closed = build_transitive_alphabet(dfa, limits)?;
    let mut report = naive::run_as(&closed, policy, limits, observer, Algorithm::TransPr)?;
    report.closure_iterations = transitive_depth(dfa.num_states);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::bitset_from;
    use crate::automata::Partition;

    /// Ten-state unary chain ending in an accepting self-loop.
    fn chain() -> Dfa {
        let delta = vec![(0..10u32).map(|q| (q + 1).min(9)).collect()];
        Dfa::new(delta, bitset_from(10, [9]), Some(0)).unwrap()
    }

    #[test]
    fn depth() {
        assert_eq!(transitive_depth(1), 0);
        assert_eq!(transitive_depth(2), 1);
        assert_eq!(transitive_depth(10), 3);
        assert_eq!(transitive_depth(1024), 10);
    }

    #[test]
    fn doubling_on_chain() {
        let closed = build_transitive_alphabet(&chain(), &Limits::default()).unwrap();
        assert_eq!(closed.alphabet_size, 4);
        assert_eq!(closed.letter_names.as_ref().unwrap()[3], "a^8");
        assert_eq!(closed.step(0, 3), 8);
        assert_eq!(closed.step(1, 3), 9);
    }

    #[test]
    fn chain_needs_fewer_passes() {
        let report = trans_pr(&chain(), ElectionPolicy::MinIndex, &Limits::default()).unwrap();
        assert_eq!(report.partition, Partition::identity(10));
        assert_eq!(report.closure_iterations, 3);
        assert!(report.refining_iterations < 8, "{}", report.refining_iterations);
    }

    #[test]
    fn alphabet_guard() {
        let limits = Limits {
            max_alphabet: 2,
            ..Limits::default()
        };
        assert!(build_transitive_alphabet(&chain(), &limits)
            .unwrap_err()
            .is_resource());
    }
}
