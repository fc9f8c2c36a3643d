//! WebAssembly bindings behind `www/index.html`. Every entry point returns
//! JSON or automaton text, and errors come back as strings.

use dfapar::automata::{read_dfa, write_dfa};
use dfapar::equivalence::{explore_product, Mode, ProductOptions, Verdict};
use dfapar::generators::Family;
use dfapar::minimize::{minimize_observed, Algorithm, ElectionPolicy, Limits, Snapshot};
use dfapar::Dfa;
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Largest automaton the page will build. Keeps the tab responsive.
pub const MAX_DEMO_STATES: usize = 1 << 16;

#[derive(Serialize)]
struct Curve {
    algo: &'static str,
    /// Block count after each pass, starting with the initial partition.
    blocks: Vec<usize>,
    refining_iterations: usize,
    closure_iterations: usize,
    output_size: usize,
}

#[derive(Serialize)]
struct Curves {
    name: String,
    states: usize,
    letters: usize,
    curves: Vec<Curve>,
}

#[derive(Serialize)]
struct PairCheck {
    holds: bool,
    verdict: &'static str,
    witness: Option<Vec<String>>,
    explored_states: usize,
    levels: usize,
}

fn build(family: &str, size: usize) -> Result<Dfa, String> {
    let family = Family::sized(family, size).map_err(|e| e.to_string())?;
    family.generate(MAX_DEMO_STATES).map_err(|e| e.to_string())
}

fn algorithms(list: &str) -> Result<Vec<Algorithm>, String> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<Algorithm>().map_err(|e| e.to_string()))
        .collect()
}

/// Writes a generated benchmark automaton in the text format.
#[wasm_bindgen]
pub fn generate_text(family: &str, size: usize) -> Result<String, String> {
    build(family, size).map(|dfa| write_dfa(&dfa))
}

/// Block counts per pass for each algorithm in the comma-separated `algos`
/// list. The pair-graph algorithm has no per-pass partition, so its curve
/// holds only the final size.
#[wasm_bindgen]
pub fn refinement_curves(family: &str, size: usize, algos: &str) -> Result<String, String> {
    let dfa = build(family, size)?;
    let mut curves = Vec::new();
    for algo in algorithms(algos)? {
        let mut blocks = Vec::new();
        let mut record = |s: Snapshot<'_>| blocks.push(s.num_blocks);
        let report = minimize_observed(&dfa, algo, ElectionPolicy::MinIndex, &Limits::default(), Some(&mut record))
            .map_err(|e| format!("{}: {e}", algo.name()))?;
        if blocks.is_empty() {
            blocks.push(report.output_size());
        }
        curves.push(Curve {
            algo: algo.name(),
            blocks,
            refining_iterations: report.refining_iterations,
            closure_iterations: report.closure_iterations,
            output_size: report.output_size(),
        });
    }
    let out = Curves {
        name: Family::sized(family, size).map_err(|e| e.to_string())?.to_string(),
        states: dfa.num_states,
        letters: dfa.alphabet_size,
        curves,
    };
    serde_json::to_string(&out).map_err(|e| e.to_string())
}

/// Compares two automata given as text. `mode` is `equiv` or `include`.
#[wasm_bindgen]
pub fn check_pair(left: &str, right: &str, mode: &str) -> Result<String, String> {
    let mode = match mode {
        "equiv" => Mode::Equivalence,
        "include" => Mode::Inclusion,
        other => return Err(format!("unknown mode `{other}`; expected equiv or include")),
    };
    let left = read_dfa(left).map_err(|e| format!("left automaton: {e}"))?;
    let right = read_dfa(right).map_err(|e| format!("right automaton: {e}"))?;
    let options = ProductOptions {
        max_visited: MAX_DEMO_STATES * 16,
        ..ProductOptions::default()
    };
    let result = explore_product(&left, &right, mode, &options).map_err(|e| e.to_string())?;
    let (verdict, witness) = match &result.verdict {
        Verdict::Equivalent => ("equivalent", None),
        Verdict::Included => ("included", None),
        Verdict::Counterexample(w) => (
            "counterexample",
            Some(w.iter().map(|&a| left.letter_label(a)).collect()),
        ),
    };
    let out = PairCheck {
        holds: result.verdict.holds(),
        verdict,
        witness,
        explored_states: result.explored_states,
        levels: result.levels,
    };
    serde_json::to_string(&out).map_err(|e| e.to_string())
}
