mod bench;
mod budget;
mod record;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use dfapar::automata::{prune_unreachable, quotient, read_dfa, write_dfa, UNREACHABLE};
use dfapar::equivalence::{explore_product, Mode, Verdict};
use dfapar::generators::{complete_to_dfa, determinize, load_aut, DEFAULT_MAX_STATES};
use dfapar::minimize::{Algorithm, ElectionPolicy};
use dfapar::{Dfa, Partition};

use budget::Budget;
use record::{measure, write_csv, write_markdown, Task};

#[derive(Parser)]
#[command(name = "dfapar", version, about = "Parallel DFA minimisation and equivalence checking")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a benchmark automaton in the text format.
    Generate(GenerateArgs),
    /// Minimise an automaton and print one CSV row.
    Minimize(MinimizeArgs),
    /// Check language equivalence. Exit 0 if equal, 1 with a witness otherwise.
    Equiv(ProductArgs),
    /// Check language inclusion of the first automaton in the second.
    Include(ProductArgs),
    /// Determinise and complete an Aldébaran `.aut` transition system.
    Convert(ConvertArgs),
    /// Run a TOML benchmark suite and write CSV.
    Bench(BenchArgs),
}

#[derive(Args)]
struct BudgetArgs {
    /// Wall-clock limit in seconds; 0 disables it.
    #[arg(long, default_value_t = 300.0)]
    timeout_s: f64,
    /// Memory budget in MiB. Defaults to $DFAPAR_MEM_BUDGET_MB or 4096.
    #[arg(long)]
    mem_budget_mb: Option<u64>,
}

impl BudgetArgs {
    fn resolve(&self) -> Result<Budget> {
        Budget::resolve(self.mem_budget_mb, self.timeout_s)
    }
}

#[derive(Args)]
struct GenerateArgs {
    /// One of fib, bitsplit, bitsplit-ext, cycle, memory-perfect, memory-forgetful, random.
    family: String,
    /// Fibonacci word index (fib).
    #[arg(long)]
    word_index: Option<usize>,
    /// Size parameter (all other families).
    #[arg(long)]
    n: Option<usize>,
    /// Alphabet size (random).
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0.5)]
    accept_fraction: f64,
    #[arg(long, default_value_t = DEFAULT_MAX_STATES)]
    max_states: usize,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct MinimizeArgs {
    input: PathBuf,
    /// moore, trans, naive, naive-fused, sort or transpr.
    #[arg(long, default_value = "naive")]
    algo: Algorithm,
    /// min, or arbitrary:SEED.
    #[arg(long, default_value = "min")]
    policy: ElectionPolicy,
    #[arg(long, default_value_t = 5)]
    runs: usize,
    #[command(flatten)]
    budget: BudgetArgs,
    /// Write the minimised automaton (or a block listing when there is no
    /// initial state) to this file.
    #[arg(long)]
    emit: Option<PathBuf>,
    /// Print a markdown table instead of CSV.
    #[arg(long)]
    markdown: bool,
}

#[derive(Args)]
struct ProductArgs {
    left: PathBuf,
    right: PathBuf,
    /// Print the number of explored pairs and waves.
    #[arg(long)]
    stats: bool,
    /// Pair letters by name rather than by position.
    #[arg(long)]
    by_name: bool,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Args)]
struct ConvertArgs {
    input: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long, default_value_t = 600.0)]
    timeout_s: f64,
    #[arg(long)]
    mem_budget_mb: Option<u64>,
}

#[derive(Args)]
struct BenchArgs {
    suite: PathBuf,
    /// CSV destination; stdout when absent.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Also print a markdown table to stdout.
    #[arg(long)]
    markdown: bool,
    /// Override the suite's run count.
    #[arg(long)]
    runs: Option<usize>,
    /// Override the suite's timeout.
    #[arg(long)]
    timeout_s: Option<f64>,
    #[arg(long)]
    mem_budget_mb: Option<u64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Generate(args) => generate(args).map(|()| ExitCode::SUCCESS),
        Command::Minimize(args) => minimize(args).map(|()| ExitCode::SUCCESS),
        Command::Equiv(args) => product(args, Mode::Equivalence),
        Command::Include(args) => product(args, Mode::Inclusion),
        Command::Convert(args) => convert(args).map(|()| ExitCode::SUCCESS),
        Command::Bench(args) => bench(args).map(|()| ExitCode::SUCCESS),
    };
    outcome.unwrap_or_else(|e| {
        eprintln!("error: {e:#}");
        ExitCode::from(2)
    })
}

fn read_automaton(path: &Path) -> Result<Dfa> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    read_dfa(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => io::stdout().write_all(text.as_bytes()).context("writing to stdout"),
    }
}

fn report_warm_up() {
    let spent = dfapar::par::warm_up();
    if !spent.is_zero() {
        eprintln!(
            "worker pool start-up: {:.3} ms ({} workers)",
            spent.as_secs_f64() * 1e3,
            dfapar::par::workers()
        );
    }
}

fn generate(args: GenerateArgs) -> Result<()> {
    let size = if args.family == "fib" {
        args.word_index.context("fib needs --word-index")?
    } else {
        args.n.with_context(|| format!("{} needs --n", args.family))?
    };
    let family = bench::family_from(&args.family, size, args.k, args.accept_fraction, args.seed)?;
    let dfa = family.generate(args.max_states)?;
    write_output(args.output.as_deref(), &write_dfa(&dfa))
}

/// Restricts `partition` to the states kept by `map` and renumbers blocks.
fn restrict_partition(partition: &Partition, map: &[u32], kept: usize) -> Partition {
    let mut labels = vec![0u32; kept];
    for (old, &new) in map.iter().enumerate() {
        if new != UNREACHABLE {
            labels[new as usize] = partition.block_of[old];
        }
    }
    Partition::from_labels(&labels)
}

fn block_listing(partition: &Partition) -> String {
    let mut out = String::new();
    for block in partition.blocks() {
        let line: Vec<String> = block.iter().map(u32::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

fn minimize(args: MinimizeArgs) -> Result<()> {
    let budget = args.budget.resolve()?;
    if args.runs == 0 {
        anyhow::bail!("--runs must be at least 1");
    }
    let dfa = read_automaton(&args.input)?;
    let name = args
        .input
        .file_stem()
        .map_or_else(|| "input".to_string(), |s| s.to_string_lossy().into_owned());
    report_warm_up();
    let task = Task::Minimize(args.algo, args.policy);
    let (record, report) = measure(&name, &dfa, &dfa, task, args.runs, &budget)?;
    if args.markdown {
        write_markdown(io::stdout().lock(), std::slice::from_ref(&record))?;
    } else {
        write_csv(io::stdout().lock(), std::slice::from_ref(&record))?;
    }
    if let (Some(path), Some(report)) = (&args.emit, report) {
        let text = if dfa.initial.is_some() {
            let (pruned, map) = prune_unreachable(&dfa)?;
            let partition = restrict_partition(&report.partition, &map, pruned.num_states);
            write_dfa(&quotient(&pruned, &partition)?)
        } else {
            block_listing(&report.partition)
        };
        write_output(Some(path), &text)?;
    }
    Ok(())
}

fn product(args: ProductArgs, mode: Mode) -> Result<ExitCode> {
    let budget = args.budget.resolve()?;
    let left = read_automaton(&args.left)?;
    let right = read_automaton(&args.right)?;
    report_warm_up();
    let start = Instant::now();
    let result = explore_product(&left, &right, mode, &budget.product(args.by_name))?;
    let elapsed = start.elapsed();
    let mut out = io::stdout().lock();
    let code = match &result.verdict {
        Verdict::Equivalent => {
            writeln!(out, "equivalent")?;
            ExitCode::SUCCESS
        }
        Verdict::Included => {
            writeln!(out, "included")?;
            ExitCode::SUCCESS
        }
        Verdict::Counterexample(word) => {
            let shown = if word.is_empty() {
                "(empty word)".to_string()
            } else {
                left.format_word(word)
            };
            writeln!(out, "counterexample: {shown}")?;
            ExitCode::from(1)
        }
    };
    if args.stats {
        writeln!(out, "explored_states: {}", result.explored_states)?;
        writeln!(out, "levels: {}", result.levels)?;
        writeln!(out, "time_ms: {:.3}", elapsed.as_secs_f64() * 1e3)?;
    }
    Ok(code)
}

fn convert(args: ConvertArgs) -> Result<()> {
    let budget = Budget::resolve(args.mem_budget_mb, args.timeout_s)?;
    let text = fs::read_to_string(&args.input).with_context(|| format!("reading {}", args.input.display()))?;
    let lts = load_aut(&text).with_context(|| format!("parsing {}", args.input.display()))?;
    let det = determinize(&lts, &budget.determinize())?;
    let dfa = complete_to_dfa(&det)?;
    let rendered = write_dfa(&dfa);
    match &args.output {
        Some(path) => {
            write_output(Some(path), &rendered)?;
            println!("N = {}, k = {}", dfa.num_states, dfa.alphabet_size);
        }
        None => {
            write_output(None, &rendered)?;
            eprintln!("N = {}, k = {}", dfa.num_states, dfa.alphabet_size);
        }
    }
    Ok(())
}

fn bench(args: BenchArgs) -> Result<()> {
    let text = fs::read_to_string(&args.suite).with_context(|| format!("reading {}", args.suite.display()))?;
    let mut suite: bench::Suite = toml::from_str(&text).with_context(|| format!("parsing {}", args.suite.display()))?;
    if let Some(runs) = args.runs {
        suite.runs = runs;
    }
    if let Some(t) = args.timeout_s {
        suite.timeout_s = t;
    }
    let budget = Budget::resolve(args.mem_budget_mb.or(suite.mem_budget_mb), suite.timeout_s)?;
    let base = args.suite.parent().unwrap_or(Path::new("."));
    report_warm_up();
    let rows = bench::run_suite(&suite, base, &budget, |r| {
        eprintln!("{}: {} {:?}", r.name, r.algo, r.status);
    })?;
    match &args.output {
        Some(path) => {
            let file = fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
            write_csv(io::BufWriter::new(file), &rows)?;
        }
        None if !args.markdown => write_csv(io::stdout().lock(), &rows)?,
        None => {}
    }
    if args.markdown {
        write_markdown(io::stdout().lock(), &rows)?;
    }
    Ok(())
}
