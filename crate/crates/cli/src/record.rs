use std::io::Write;
use std::time::Instant;

use anyhow::Result;
use dfapar::equivalence::{explore_product, Mode};
use dfapar::minimize::{minimize, Algorithm, ElectionPolicy, RefinementReport};
use dfapar::{Dfa, Error};
use serde::Serialize;

use crate::budget::Budget;

pub const CSV_HEADER: &str = "name,n,k,algo,output_size,refine_iters,closure_iters,mean_ms,status";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    Timeout,
    OutOfMemory,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Timeout => "timeout",
            Status::OutOfMemory => "out-of-memory",
        }
    }
}

/// One result row. Time and iteration columns are empty unless the status is ok.
#[derive(Clone, Debug, Serialize)]
pub struct BenchRecord {
    pub name: String,
    pub n: usize,
    pub k: usize,
    pub algo: String,
    pub output_size: Option<usize>,
    pub refine_iters: Option<usize>,
    pub closure_iters: Option<usize>,
    #[serde(serialize_with = "three_decimals")]
    pub mean_ms: Option<f64>,
    pub status: Status,
}

fn three_decimals<S: serde::Serializer>(ms: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match ms {
        Some(ms) => s.serialize_str(&format!("{ms:.3}")),
        None => s.serialize_none(),
    }
}

/// What a benchmark row measures.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Task {
    Minimize(Algorithm, ElectionPolicy),
    /// Product exploration; `output_size` is the number of explored pairs
    /// and `refine_iters` the number of waves.
    Product(Mode),
}

impl Task {
    pub fn parse(name: &str, policy: ElectionPolicy) -> Result<Self> {
        Ok(match name {
            "equiv" => Task::Product(Mode::Equivalence),
            "include" => Task::Product(Mode::Inclusion),
            "full" => Task::Product(Mode::Full),
            other => Task::Minimize(other.parse()?, policy),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Task::Minimize(algorithm, _) => algorithm.name(),
            Task::Product(Mode::Equivalence) => "equiv",
            Task::Product(Mode::Inclusion) => "include",
            Task::Product(Mode::Full) => "full",
        }
    }
}

struct Sample {
    output_size: usize,
    refine_iters: usize,
    closure_iters: usize,
}

fn failure_status(err: &Error) -> Option<Status> {
    match err {
        Error::Timeout => Some(Status::Timeout),
        e if e.is_resource() => Some(Status::OutOfMemory),
        _ => None,
    }
}

/// Runs `task` `runs` times and averages the wall time of the algorithm
/// call alone. A timeout or budget failure in any run ends the row.
///
/// Product tasks compare `left` with `right`. Hard errors (e.g. an
/// alphabet mismatch) are returned rather than recorded.
pub fn measure(
    name: &str,
    left: &Dfa,
    right: &Dfa,
    task: Task,
    runs: usize,
    budget: &Budget,
) -> Result<(BenchRecord, Option<RefinementReport>)> {
    let mut total_ms = 0.0;
    let mut sample = None;
    let mut report = None;
    let mut status = Status::Ok;
    for _ in 0..runs.max(1) {
        let outcome = match task {
            Task::Minimize(algorithm, policy) => {
                let limits = budget.limits(left.num_states);
                let start = Instant::now();
                let result = minimize(left, algorithm, policy, &limits);
                let ms = start.elapsed().as_secs_f64() * 1e3;
                result.map(|r| {
                    let s = Sample {
                        output_size: r.output_size(),
                        refine_iters: r.refining_iterations,
                        closure_iters: r.closure_iterations,
                    };
                    report = Some(r);
                    (s, ms)
                })
            }
            Task::Product(mode) => {
                let options = budget.product(false);
                let start = Instant::now();
                let result = explore_product(left, right, mode, &options);
                let ms = start.elapsed().as_secs_f64() * 1e3;
                result.map(|r| {
                    (
                        Sample {
                            output_size: r.explored_states,
                            refine_iters: r.levels,
                            closure_iters: 0,
                        },
                        ms,
                    )
                })
            }
        };
        match outcome {
            Ok((s, ms)) => {
                total_ms += ms;
                sample = Some(s);
            }
            Err(e) => match failure_status(&e) {
                Some(s) => {
                    status = s;
                    sample = None;
                    report = None;
                    break;
                }
                None => return Err(e.into()),
            },
        }
    }
    let ok = status == Status::Ok;
    let record = BenchRecord {
        name: name.to_string(),
        n: left.num_states,
        k: left.alphabet_size,
        algo: task.name().to_string(),
        output_size: sample.as_ref().filter(|_| ok).map(|s| s.output_size),
        refine_iters: sample.as_ref().filter(|_| ok).map(|s| s.refine_iters),
        closure_iters: sample.as_ref().filter(|_| ok).map(|s| s.closure_iters),
        mean_ms: ok.then(|| total_ms / runs.max(1) as f64),
        status,
    };
    Ok((record, report))
}

pub fn write_csv(out: impl Write, records: &[BenchRecord]) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    for record in records {
        writer.serialize(record)?;
    }
    if records.is_empty() {
        let mut inner = writer.into_inner().map_err(|e| e.into_error())?;
        writeln!(inner, "{CSV_HEADER}")?;
        return Ok(());
    }
    writer.flush()?;
    Ok(())
}

pub fn write_markdown(mut out: impl Write, records: &[BenchRecord]) -> Result<()> {
    let columns: Vec<&str> = CSV_HEADER.split(',').collect();
    writeln!(out, "| {} |", columns.join(" | "))?;
    writeln!(out, "|{}", "---|".repeat(columns.len()))?;
    let opt = |v: Option<usize>| v.map_or_else(|| "-".to_string(), |v| v.to_string());
    for r in records {
        writeln!(
            out,
            "| {} | {} | {} | {} | {} | {} | {} | {} | {} |",
            r.name,
            r.n,
            r.k,
            r.algo,
            opt(r.output_size),
            opt(r.refine_iters),
            opt(r.closure_iters),
            r.mean_ms.map_or_else(|| "-".to_string(), |ms| format!("{ms:.3}")),
            r.status.as_str(),
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_header_is_exact() {
        let mut buf = Vec::new();
        let record = BenchRecord {
            name: "B3".into(),
            n: 8,
            k: 2,
            algo: "naive".into(),
            output_size: None,
            refine_iters: None,
            closure_iters: None,
            mean_ms: None,
            status: Status::OutOfMemory,
        };
        write_csv(&mut buf, &[record]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, format!("{CSV_HEADER}\nB3,8,2,naive,,,,,out-of-memory\n"));
        let mut empty = Vec::new();
        write_csv(&mut empty, &[]).unwrap();
        assert_eq!(String::from_utf8(empty).unwrap(), format!("{CSV_HEADER}\n"));
    }
}
