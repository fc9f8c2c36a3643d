use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use dfapar::generators::{complete_to_dfa, determinize, load_aut, Family};
use dfapar::minimize::ElectionPolicy;
use dfapar::automata::read_dfa;
use dfapar::{Dfa, Error};
use serde::Deserialize;

use crate::budget::Budget;
use crate::record::{measure, BenchRecord, Status, Task};

/// A benchmark suite read from TOML.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Suite {
    #[serde(default = "default_runs")]
    pub runs: usize,
    #[serde(default = "default_timeout")]
    pub timeout_s: f64,
    pub mem_budget_mb: Option<u64>,
    #[serde(default)]
    pub instances: Vec<InstanceSpec>,
}

fn default_runs() -> usize {
    5
}

fn default_timeout() -> f64 {
    300.0
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceSpec {
    /// A generator family, or `dfa`/`aut` for a file.
    pub family: String,
    /// Family parameters. For `fib` these are label indices `k`, built from
    /// the word with index `k + 1`.
    #[serde(default)]
    pub sizes: Option<Sizes>,
    pub algos: Vec<String>,
    #[serde(default)]
    pub policy: Option<String>,
    pub file: Option<PathBuf>,
    pub name: Option<String>,
    #[serde(default = "default_k")]
    pub k: usize,
    #[serde(default = "default_accept_fraction")]
    pub accept_fraction: f64,
    #[serde(default)]
    pub seed: u64,
}

fn default_k() -> usize {
    2
}

fn default_accept_fraction() -> f64 {
    0.5
}

/// Either an explicit list or an inclusive range written `"a..b"`.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum Sizes {
    List(Vec<usize>),
    Range(String),
}

impl Sizes {
    fn expand(&self) -> Result<Vec<usize>> {
        match self {
            Sizes::List(v) => Ok(v.clone()),
            Sizes::Range(s) => {
                let (a, b) = s
                    .split_once("..")
                    .with_context(|| format!("size range {s:?} is not of the form a..b"))?;
                let a: usize = a.trim().parse().with_context(|| format!("bad range start in {s:?}"))?;
                let b: usize = b.trim().parse().with_context(|| format!("bad range end in {s:?}"))?;
                if a > b {
                    bail!("empty size range {s:?}");
                }
                Ok((a..=b).collect())
            }
        }
    }
}

/// Row names use the conventional benchmark labels. `Fib_k` is the automaton over
/// the word with index `k + 1`.
pub fn row_name(family: &Family) -> String {
    match *family {
        Family::Fib { word_index } => format!("Fib{}", word_index.saturating_sub(1)),
        Family::BitSplitter { n } => format!("B{n}"),
        Family::BitSplitterExt { n } => format!("B'{n}"),
        Family::Cycle { n } => format!("C{n}"),
        Family::MemoryPerfect { n } => format!("memory-perfect.{n}"),
        Family::MemoryForgetful { n } => format!("memory.{n}"),
        Family::Random { n, k, seed, .. } => format!("random.{n}.{k}.{seed}"),
    }
}

pub fn family_from(name: &str, size: usize, k: usize, accept_fraction: f64, seed: u64) -> Result<Family> {
    Ok(match Family::sized(name, size)? {
        Family::Random { n, .. } => Family::Random {
            n,
            k,
            accept_fraction,
            seed,
        },
        family => family,
    })
}

/// Where an instance's automaton comes from.
enum Source {
    Generated(Family),
    File(PathBuf),
}

struct Planned {
    name: String,
    source: Source,
    tasks: Vec<Task>,
}

fn plan(suite: &Suite, base: &Path) -> Result<Vec<Planned>> {
    let mut planned = Vec::new();
    for (i, entry) in suite.instances.iter().enumerate() {
        let ctx = || format!("instance {}", i + 1);
        let policy: ElectionPolicy = match &entry.policy {
            Some(p) => p.parse().with_context(ctx)?,
            None => ElectionPolicy::default(),
        };
        let tasks = entry
            .algos
            .iter()
            .map(|a| Task::parse(a, policy))
            .collect::<Result<Vec<_>>>()
            .with_context(ctx)?;
        if tasks.is_empty() {
            bail!("{}: no algorithms listed", ctx());
        }
        if entry.family == "dfa" || entry.family == "aut" {
            let file = entry
                .file
                .as_ref()
                .with_context(|| format!("{}: family {:?} needs `file`", ctx(), entry.family))?;
            let path = base.join(file);
            let name = entry.name.clone().unwrap_or_else(|| {
                path.file_stem().map_or_else(|| file.display().to_string(), |s| s.to_string_lossy().into_owned())
            });
            planned.push(Planned {
                name,
                source: Source::File(path),
                tasks,
            });
            continue;
        }
        let sizes = entry
            .sizes
            .as_ref()
            .with_context(|| format!("{}: generator families need `sizes`", ctx()))?
            .expand()
            .with_context(ctx)?;
        for size in sizes {
            let size = if entry.family == "fib" { size + 1 } else { size };
            let family = family_from(&entry.family, size, entry.k, entry.accept_fraction, entry.seed).with_context(ctx)?;
            planned.push(Planned {
                name: entry.name.clone().map_or_else(|| row_name(&family), |n| format!("{n}.{size}")),
                source: Source::Generated(family),
                tasks: tasks.clone(),
            });
        }
    }
    Ok(planned)
}

fn load_file(path: &Path, budget: &Budget) -> Result<Dfa, anyhow::Error> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    if path.extension().is_some_and(|e| e == "aut") {
        let lts = load_aut(&text).with_context(|| format!("parsing {}", path.display()))?;
        let det = determinize(&lts, &budget.determinize())?;
        Ok(complete_to_dfa(&det)?)
    } else {
        read_dfa(&text).with_context(|| format!("parsing {}", path.display()))
    }
}

fn failed_rows(name: &str, n: usize, tasks: &[Task], status: Status) -> Vec<BenchRecord> {
    tasks
        .iter()
        .map(|t| BenchRecord {
            name: name.to_string(),
            n,
            k: 0,
            algo: t.name().to_string(),
            output_size: None,
            refine_iters: None,
            closure_iters: None,
            mean_ms: None,
            status,
        })
        .collect()
}

fn status_of(err: &anyhow::Error) -> Option<Status> {
    match err.downcast_ref::<Error>() {
        Some(Error::Timeout) => Some(Status::Timeout),
        Some(e) if e.is_resource() => Some(Status::OutOfMemory),
        _ => None,
    }
}

/// Inclusion rows on the forgetful memory family compare against the
/// perfect memory of the same size; every other product row is a
/// self-comparison.
fn partner(family: Option<&Family>, task: Task, dfa: &Dfa, max_states: usize) -> Result<Option<Dfa>, Error> {
    match (family, task) {
        (Some(Family::MemoryForgetful { n }), Task::Product(dfapar::equivalence::Mode::Inclusion)) => {
            Family::MemoryPerfect { n: *n }.generate(max_states).map(Some)
        }
        (_, Task::Product(_)) => Ok(Some(dfa.clone())),
        _ => Ok(None),
    }
}

/// Runs every (instance, algorithm) pair in order, one at a time.
/// Timeouts and budget failures become rows; configuration errors abort
/// before anything runs.
pub fn run_suite(
    suite: &Suite,
    base: &Path,
    budget: &Budget,
    mut on_row: impl FnMut(&BenchRecord),
) -> Result<Vec<BenchRecord>> {
    if suite.runs == 0 {
        bail!("runs must be at least 1");
    }
    let planned = plan(suite, base)?;
    let mut rows = Vec::new();
    for p in &planned {
        let (family, loaded) = match &p.source {
            Source::Generated(f) => (Some(f), f.generate(budget.max_generated_states()).map_err(anyhow::Error::from)),
            Source::File(path) => (None, load_file(path, budget)),
        };
        let dfa = match loaded {
            Ok(d) => d,
            Err(e) => {
                let Some(status) = status_of(&e) else {
                    return Err(e.context(format!("building {}", p.name)));
                };
                let n = family.map_or(0, |f| usize::try_from(f.num_states()).unwrap_or(usize::MAX));
                for r in failed_rows(&p.name, n, &p.tasks, status) {
                    on_row(&r);
                    rows.push(r);
                }
                continue;
            }
        };
        for &task in &p.tasks {
            let record = match partner(family, task, &dfa, budget.max_generated_states()) {
                Ok(other) => {
                    let right = other.as_ref().unwrap_or(&dfa);
                    measure(&p.name, &dfa, right, task, suite.runs, budget)
                        .with_context(|| format!("{} with {}", p.name, task.name()))?
                        .0
                }
                Err(e) if e.is_resource() => {
                    failed_rows(&p.name, dfa.num_states, &[task], Status::OutOfMemory).remove(0)
                }
                Err(e) => return Err(e.into()),
            };
            on_row(&record);
            rows.push(record);
        }
    }
    Ok(rows)
}
