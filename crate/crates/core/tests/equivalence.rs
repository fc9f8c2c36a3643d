mod common;

use std::sync::atomic::{AtomicUsize, Ordering};

use dfapar::automata::prune_unreachable;
use dfapar::equivalence::{
    check_equiv, check_inclusion, explore_product, pack, Mode, PairSet, ProductOptions, Verdict,
};
use dfapar::generators::{
    gen_bitsplitter_ext, gen_memory_forgetful, gen_memory_perfect, gen_random_dfa,
};
use dfapar::Dfa;
use proptest::prelude::*;

fn full(a: &Dfa, b: &Dfa) -> usize {
    explore_product(a, b, Mode::Full, &ProductOptions::default())
        .unwrap()
        .explored_states
}

/// Shortest words accepted by exactly one side (or by `a` only), by enumeration.
fn shortest_witnesses(a: &Dfa, b: &Dfa, inclusion: bool, max_len: usize) -> Option<Vec<Vec<usize>>> {
    for len in 0..=max_len {
        let found: Vec<_> = common::words_of_length(a.alphabet_size, len)
            .into_iter()
            .filter(|w| {
                let (x, y) = (common::accepts(a, w), common::accepts(b, w));
                if inclusion {
                    x && !y
                } else {
                    x != y
                }
            })
            .collect();
        if !found.is_empty() {
            return Some(found);
        }
    }
    None
}

#[test]
fn bitsplitter_ext_self_equivalence_matches_state_count() {
    let b5 = gen_bitsplitter_ext(5).unwrap();
    let r = check_equiv(&b5, &b5).unwrap();
    assert_eq!(r.verdict, Verdict::Equivalent);
    assert_eq!(r.explored_states, 64);
    assert_eq!(full(&gen_bitsplitter_ext(10).unwrap(), &gen_bitsplitter_ext(10).unwrap()), 2048);
}

#[test]
fn perfect_and_forgetful_memory_differ_by_a_shortest_word() {
    let (p, f) = (gen_memory_perfect(3).unwrap(), gen_memory_forgetful(3).unwrap());
    let shortest = shortest_witnesses(&p, &f, false, 8).expect("languages differ");
    match check_equiv(&p, &f).unwrap().verdict {
        Verdict::Counterexample(w) => assert!(shortest.contains(&w), "{w:?}"),
        v => panic!("{v:?}"),
    }
    let shortest = shortest_witnesses(&p, &f, true, 8).expect("perfect accepts more");
    match check_inclusion(&p, &f).unwrap().verdict {
        Verdict::Counterexample(w) => assert!(shortest.contains(&w), "{w:?}"),
        v => panic!("{v:?}"),
    }
}

#[test]
fn forgetful_memory_inclusion_counts() {
    let r = check_inclusion(&gen_memory_forgetful(5).unwrap(), &gen_memory_perfect(5).unwrap()).unwrap();
    assert_eq!((r.verdict, r.explored_states), (Verdict::Included, 88));
    let (f6, p6) = (gen_memory_forgetful(6).unwrap(), gen_memory_perfect(6).unwrap());
    assert_eq!(full(&f6, &p6), 208);
}

#[test]
fn full_mode_on_identical_memories_visits_the_diagonal() {
    let p = gen_memory_perfect(2).unwrap();
    assert_eq!(full(&p, &p), 4);
}

#[test]
fn inclusion_is_reflexive() {
    let a = gen_random_dfa(40, 2, 0.5, 3).unwrap();
    assert_eq!(check_inclusion(&a, &a).unwrap().verdict, Verdict::Included);
}

#[test]
fn pair_set_concurrent_inserts_are_linearizable() {
    let set = PairSet::with_capacity(1 << 16);
    let winners = AtomicUsize::new(0);
    std::thread::scope(|s| {
        for _ in 0..8 {
            s.spawn(|| {
                for i in 0..10_000u32 {
                    if set.insert(pack(i % 5000, i / 5000)) {
                        winners.fetch_add(1, Ordering::Relaxed);
                    }
                }
            });
        }
    });
    assert_eq!(set.len(), 10_000);
    assert_eq!(winners.load(Ordering::Relaxed), 10_000);
}

fn arb_reachable(max_n: usize, k: usize) -> impl Strategy<Value = Dfa> {
    (1..=max_n, 0.0f64..=1.0, any::<u64>()).prop_map(move |(n, p, seed)| {
        prune_unreachable(&gen_random_dfa(n, k, p, seed).unwrap()).unwrap().0
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn witnesses_are_valid_and_shortest(a in arb_reachable(12, 2), b in arb_reachable(12, 2)) {
        if let Verdict::Counterexample(w) = check_equiv(&a, &b).unwrap().verdict {
            prop_assert_ne!(common::accepts(&a, &w), common::accepts(&b, &w));
            let shortest = shortest_witnesses(&a, &b, false, w.len()).unwrap();
            prop_assert_eq!(shortest[0].len(), w.len());
        }
        if let Verdict::Counterexample(w) = check_inclusion(&a, &b).unwrap().verdict {
            prop_assert!(common::accepts(&a, &w) && !common::accepts(&b, &w));
            let shortest = shortest_witnesses(&a, &b, true, w.len()).unwrap();
            prop_assert_eq!(shortest[0].len(), w.len());
        }
    }

    #[test]
    fn equivalence_is_mutual_inclusion(a in arb_reachable(20, 2), b in arb_reachable(20, 2)) {
        let eq = check_equiv(&a, &b).unwrap().verdict.holds();
        let ab = check_inclusion(&a, &b).unwrap().verdict.holds();
        let ba = check_inclusion(&b, &a).unwrap().verdict.holds();
        prop_assert_eq!(eq, ab && ba);
    }

    #[test]
    fn self_product_size_is_reachable_state_count(a in arb_reachable(60, 3)) {
        let r = check_equiv(&a, &a).unwrap();
        prop_assert_eq!(r.verdict, Verdict::Equivalent);
        prop_assert_eq!(r.explored_states, common::reachable_count(&a));
    }

    #[test]
    fn full_exploration_count_is_deterministic(a in arb_reachable(30, 2), b in arb_reachable(30, 2)) {
        let first = full(&a, &b);
        prop_assert_eq!(first, full(&a, &b));
        prop_assert!(first <= a.num_states * b.num_states);
    }
}
