//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Run a subset with `cargo test -p dfapar --test acceptance -- 2 3b`.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use dfapar::automata::{canonical_form, prune_unreachable, quotient};
use dfapar::equivalence::{check_equiv, check_inclusion, Verdict};
use dfapar::generators::{
    complete_to_dfa, cycle_fib, determinize, gen_bitsplitter, gen_bitsplitter_ext, gen_cycle,
    gen_fib, gen_memory_forgetful, gen_memory_perfect, gen_random_dfa, DeterminizeLimits,
};
use dfapar::minimize::{
    moore_minimize, naive_pr, naive_pr_fused, sort_pr, trans_minimize, trans_pr, ElectionPolicy,
    Limits,
};
use dfapar::{Dfa, Partition};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = fn() -> Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_instance(seed: u64, max_n: usize) -> Dfa {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0000 + seed);
    let n = rng.random_range(1..=max_n);
    let k = rng.random_range(1..=4);
    let p = rng.random_range(0.1..0.9);
    gen_random_dfa(n, k, p, seed).unwrap()
}

fn c1_oracle_agreement() -> Result<String, String> {
    let limits = Limits::default();
    let mut with_trans = 0;
    for seed in 0..500u64 {
        let dfa = random_instance(seed, 200);
        let expected = moore_minimize(&dfa).partition;
        let mut runs: Vec<(String, Partition)> = vec![
            ("naive_pr(min)".into(), naive_pr(&dfa, ElectionPolicy::MinIndex).partition),
            ("naive_pr_fused".into(), naive_pr_fused(&dfa).partition),
            ("sort_pr".into(), sort_pr(&dfa).partition),
            (
                "trans_pr".into(),
                trans_pr(&dfa, ElectionPolicy::MinIndex, &limits).unwrap().partition,
            ),
        ];
        for s in 0..5 {
            let policy = ElectionPolicy::Arbitrary(seed * 31 + s);
            runs.push((format!("naive_pr({policy:?})"), naive_pr(&dfa, policy).partition));
        }
        if dfa.num_states <= 40 {
            with_trans += 1;
            runs.push(("trans".into(), trans_minimize(&dfa, &limits).unwrap().partition));
        }
        for (name, p) in runs {
            ensure(p == expected, || {
                format!("seed {seed} (n={}): {name} disagrees with moore", dfa.num_states)
            })?;
        }
    }
    Ok(format!("500 DFAs agree; pair-graph algorithm checked on {with_trans} with n <= 40"))
}

fn c2a_bitsplitter_naive_sort() -> Result<String, String> {
    let mut rows = Vec::new();
    for n in 10..=15 {
        let dfa = gen_bitsplitter(n).unwrap();
        let naive = naive_pr(&dfa, ElectionPolicy::MinIndex);
        let sort = sort_pr(&dfa);
        let states = 1usize << n;
        ensure(naive.partition == Partition::identity(states), || {
            format!("B{n}: naive_pr gives {} blocks", naive.partition.num_blocks)
        })?;
        ensure(sort.partition == Partition::identity(states), || {
            format!("B{n}: sort_pr gives {} blocks", sort.partition.num_blocks)
        })?;
        ensure(naive.refining_iterations == n - 1, || {
            format!("B{n}: naive_pr took {} iterations, expected {}", naive.refining_iterations, n - 1)
        })?;
        ensure(sort.refining_iterations == n - 1, || {
            format!("B{n}: sort_pr took {} iterations, expected {}", sort.refining_iterations, n - 1)
        })?;
        rows.push(format!("B{n}:{}/{}", naive.refining_iterations, sort.refining_iterations));
    }
    Ok(format!("singletons; naive/sort iterations {}", rows.join(" ")))
}

fn c2b_bitsplitter_transpr() -> Result<String, String> {
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for n in 10..=15 {
        let dfa = gen_bitsplitter(n).unwrap();
        let report = trans_pr(&dfa, ElectionPolicy::MinIndex, &Limits::default()).unwrap();
        ensure(report.partition == Partition::identity(1 << n), || {
            format!("B{n}: trans_pr gives {} blocks", report.partition.num_blocks)
        })?;
        rows.push(format!("B{n}:{}", report.refining_iterations));
        if report.refining_iterations != 2 {
            failures.push(n);
        }
    }
    let summary = format!("trans_pr iterations {} (expected 2)", rows.join(" "));
    if failures.is_empty() {
        Ok(summary)
    } else {
        Err(summary)
    }
}

fn c3a_fib_naive() -> Result<String, String> {
    let dfa = gen_fib(19).unwrap();
    ensure(dfa.num_states == 6765, || format!("N = {}", dfa.num_states))?;
    let report = naive_pr(&dfa, ElectionPolicy::MinIndex);
    ensure(report.partition.num_blocks == 6765, || {
        format!("output size {}", report.partition.num_blocks)
    })?;
    let quotient_size = quotient(&dfa, &report.partition).unwrap().num_states;
    ensure(quotient_size == 6765, || format!("quotient has {quotient_size} states"))?;
    ensure((6763..=6765).contains(&report.refining_iterations), || {
        format!("naive_pr took {} iterations", report.refining_iterations)
    })?;
    Ok(format!(
        "output size 6765, naive_pr iterations {}",
        report.refining_iterations
    ))
}

fn c3b_fib_transpr() -> Result<String, String> {
    let dfa = gen_fib(19).unwrap();
    let naive = naive_pr(&dfa, ElectionPolicy::MinIndex).refining_iterations;
    let report = trans_pr(&dfa, ElectionPolicy::MinIndex, &Limits::default()).unwrap();
    ensure(report.partition.num_blocks == 6765, || {
        format!("trans_pr output size {}", report.partition.num_blocks)
    })?;
    let summary = format!(
        "trans_pr iterations {} vs naive_pr {} (bound {})",
        report.refining_iterations,
        naive,
        naive / 10
    );
    if report.refining_iterations <= naive / 10 {
        Ok(summary)
    } else {
        Err(summary)
    }
}

fn c4_closure_iterations() -> Result<String, String> {
    let expected = [(5, 8, 3), (6, 13, 4), (7, 21, 5), (8, 34, 5), (9, 55, 6)];
    let mut rows = Vec::new();
    for (m, n, reference) in expected {
        let dfa = gen_fib(m).unwrap();
        ensure(dfa.num_states == n, || format!("gen_fib({m}) has {} states", dfa.num_states))?;
        let report = trans_minimize(&dfa, &Limits::default()).unwrap();
        ensure(report.partition == Partition::identity(n), || {
            format!("N={n}: {} blocks", report.partition.num_blocks)
        })?;
        let got = report.closure_iterations;
        ensure(got.abs_diff(reference) <= 1, || {
            format!("N={n}: {got} closure passes, expected {reference} ± 1")
        })?;
        rows.push(format!("N={n}:{got}"));
    }
    Ok(format!("closure passes {}", rows.join(" ")))
}

fn c5_self_equivalence() -> Result<String, String> {
    let mut rows = Vec::new();
    for n in 5..=14 {
        let dfa = gen_bitsplitter_ext(n).unwrap();
        let r = check_equiv(&dfa, &dfa).unwrap();
        ensure(r.verdict == Verdict::Equivalent, || format!("B'{n}: {:?}", r.verdict))?;
        ensure(r.explored_states == 1 << (n + 1), || {
            format!("B'{n}: explored {}", r.explored_states)
        })?;
        rows.push(r.explored_states.to_string());
    }
    for n in [30, 31] {
        let dfa = gen_cycle(n).unwrap();
        let r = check_equiv(&dfa, &dfa).unwrap();
        ensure(r.verdict == Verdict::Equivalent, || format!("C{n}: {:?}", r.verdict))?;
        ensure(r.explored_states as u128 == cycle_fib(n), || {
            format!("C{n}: explored {}", r.explored_states)
        })?;
        rows.push(r.explored_states.to_string());
    }
    Ok(format!("explored {}", rows.join(", ")))
}

fn c6_inclusion() -> Result<String, String> {
    let expected = [88, 208, 480, 1088, 2432, 5376];
    let mut rows = Vec::new();
    for (n, want) in (5..=10).zip(expected) {
        let r = check_inclusion(&gen_memory_forgetful(n).unwrap(), &gen_memory_perfect(n).unwrap())
            .unwrap();
        ensure(r.verdict == Verdict::Included, || format!("memory.{n}: {:?}", r.verdict))?;
        ensure(r.explored_states == want, || {
            format!("memory.{n}: explored {}, expected {want}", r.explored_states)
        })?;
        rows.push(r.explored_states.to_string());
    }
    Ok(format!("included; explored {}", rows.join(", ")))
}

fn minimized(dfa: &Dfa) -> Dfa {
    let p = moore_minimize(dfa).partition;
    canonical_form(&quotient(dfa, &p).unwrap()).unwrap()
}

/// Shortest counterexample length by a sequential product BFS.
fn shortest_witness(a: &Dfa, b: &Dfa) -> Option<usize> {
    let nb = b.num_states;
    let mut dist = vec![usize::MAX; a.num_states * nb];
    let start = a.initial.unwrap() as usize * nb + b.initial.unwrap() as usize;
    dist[start] = 0;
    let mut queue = std::collections::VecDeque::from([start]);
    while let Some(s) = queue.pop_front() {
        let (p, q) = (s / nb, s % nb);
        if a.accepting.contains(p) != b.accepting.contains(q) {
            return Some(dist[s]);
        }
        for x in 0..a.alphabet_size {
            let t = a.delta[x][p] as usize * nb + b.delta[x][q] as usize;
            if dist[t] == usize::MAX {
                dist[t] = dist[s] + 1;
                queue.push_back(t);
            }
        }
    }
    None
}

fn c7_equivalence_cross_check() -> Result<String, String> {
    let mut equivalent = 0;
    let mut brute = 0;
    for i in 0..200u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(0x7000 + i);
        let n = rng.random_range(1..=100);
        let k = rng.random_range(1..=3);
        let a = prune_unreachable(&gen_random_dfa(n, k, 0.5, i).unwrap()).unwrap().0;
        let b = match i % 3 {
            // Same language, different shape.
            0 => common::shuffle_states(&minimized(&a), i),
            1 => prune_unreachable(&gen_random_dfa(n, k, 0.5, i + 10_000).unwrap()).unwrap().0,
            _ => {
                let mut b = a.clone();
                let q = rng.random_range(0..b.num_states);
                b.accepting.toggle(q);
                prune_unreachable(&b).unwrap().0
            }
        };
        let b = if b.initial == Some(0) { b } else { prune_unreachable(&b).unwrap().0 };
        let result = check_equiv(&a, &b).unwrap();
        let same = minimized(&a) == minimized(&b);
        ensure(result.verdict.holds() == same, || {
            format!("pair {i}: verdict {:?} but canonical equality {same}", result.verdict)
        })?;
        match result.verdict {
            Verdict::Counterexample(w) => {
                ensure(common::accepts(&a, &w) != common::accepts(&b, &w), || {
                    format!("pair {i}: {w:?} is not a witness")
                })?;
                if w.is_empty() {
                    // Nothing is shorter than the empty word.
                } else if (k as f64).powi(w.len() as i32) <= 2e6 {
                    brute += 1;
                    for u in common::words_up_to(k, w.len() - 1) {
                        ensure(common::accepts(&a, &u) == common::accepts(&b, &u), || {
                            format!("pair {i}: shorter witness {u:?} than {w:?}")
                        })?;
                    }
                } else {
                    ensure(shortest_witness(&a, &b) == Some(w.len()), || {
                        format!("pair {i}: witness {w:?} is not shortest")
                    })?;
                }
            }
            _ => equivalent += 1,
        }
    }
    Ok(format!(
        "200 pairs consistent ({equivalent} equivalent); {brute} witnesses checked by enumeration"
    ))
}

fn c8_determinization() -> Result<String, String> {
    let mut words = 0;
    for seed in 0..100u64 {
        let lts = common::random_lts(seed, 6, 3, 12);
        let det = determinize(&lts, &DeterminizeLimits::default()).unwrap();
        let dfa = complete_to_dfa(&det).unwrap();
        ensure(!dfa.is_accepting(dfa.num_states as u32 - 1), || {
            format!("seed {seed}: sink accepts")
        })?;
        for word in common::label_words(&lts.labels, 6) {
            words += 1;
            let want = common::lts_has_trace(&lts, &word);
            ensure(common::dfa_accepts_labels(&dfa, &word) == want, || {
                format!("seed {seed}: {word:?} trace={want}")
            })?;
        }
    }
    Ok(format!("100 LTSs, {words} words up to length 6"))
}

fn c9_timing_trend() -> Result<String, String> {
    let mut rows = Vec::new();
    for m in [13, 15, 17] {
        let dfa = gen_fib(m).unwrap();
        let start = Instant::now();
        let report = naive_pr(&dfa, ElectionPolicy::MinIndex);
        rows.push(format!(
            "N={}:{} iters {:.1} ms",
            dfa.num_states,
            report.refining_iterations,
            start.elapsed().as_secs_f64() * 1e3
        ));
    }
    Ok(format!("informational, no assertion: {}", rows.join(", ")))
}

fn main() {
    let criteria: [(&str, &str, Check, Duration); 11] = [
        ("1", "oracle agreement on 500 random DFAs", c1_oracle_agreement, Duration::from_secs(120)),
        ("2a", "bit-splitter B10..B15: naive_pr and sort_pr", c2a_bitsplitter_naive_sort, Duration::from_secs(30)),
        ("2b", "bit-splitter B10..B15: trans_pr iterations = 2", c2b_bitsplitter_transpr, Duration::from_secs(30)),
        ("3a", "Fibonacci N=6765: output size and naive_pr iterations", c3a_fib_naive, Duration::from_secs(120)),
        ("3b", "Fibonacci N=6765: trans_pr <= naive_pr/10", c3b_fib_transpr, Duration::from_secs(120)),
        ("4", "pair-graph closure passes on Fibonacci N=8..55", c4_closure_iterations, Duration::from_secs(300)),
        ("5", "self-equivalence product sizes", c5_self_equivalence, Duration::from_secs(60)),
        ("6", "forgetful/perfect memory inclusion sizes", c6_inclusion, Duration::from_secs(10)),
        ("7", "equivalence vs minimisation cross-check", c7_equivalence_cross_check, Duration::from_secs(120)),
        ("8", "determinization soundness", c8_determinization, Duration::from_secs(60)),
        ("9", "timing trend", c9_timing_trend, Duration::from_secs(600)),
    ];
    let filters: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    dfapar::par::warm_up();
    let mut failed = 0;
    let mut ran = 0;
    for (id, title, check, limit) in criteria {
        if !filters.is_empty() && !filters.iter().any(|f| id.starts_with(f.as_str())) {
            continue;
        }
        ran += 1;
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > limit => Err(format!(
                "{detail}; exceeded the {} s runtime limit",
                limit.as_secs()
            )),
            other => other,
        };
        let (status, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!(
            "{status} [{id:>2}] {title} ({:.2} s): {detail}",
            elapsed.as_secs_f64()
        );
    }
    println!("acceptance: {} of {ran} criteria passed", ran - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
