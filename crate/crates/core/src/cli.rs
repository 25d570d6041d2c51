//! Command-line front end.
//!
//! Results go to stdout as JSON (or CSV/TSV for `bench`), diagnostics to
//! stderr. Exit codes: 0 success, 1 solver failure or oracle mismatch,
//! 2 bad flags, unreadable input or oversized oracle instance.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::annealer::{self, AnnealParams};
use crate::bench::{
    self, instances, BenchConfig, BenchError, GraphSource, OutputFormat, ParamOverrides,
    ProblemOptions,
};
use crate::evaluator::{brute_force_balanced_mincut, ORACLE_MAX_NODES};
use crate::ising::{parse_coefficient, CoefficientRule, MinCutProblem};

#[derive(Debug, Parser)]
#[command(
    name = "ising-partition",
    version,
    about = "Balanced graph min-cut by parallel Ising annealing"
)]
pub struct Cli {
    /// More diagnostics on stderr (repeatable).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    pub verbose: u8,
    /// No diagnostics on stderr.
    #[arg(short, long, global = true, conflicts_with = "verbose")]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Partition one graph and print the best result as JSON.
    Solve(SolveArgs),
    /// Run best-of-R benchmarks over several graphs.
    Bench(BenchArgs),
    /// Compare the annealer against exhaustive search on a small graph.
    OracleCheck(OracleArgs),
    /// Write a synthesized stand-in for a reference graph in G-set format.
    Generate(GenerateArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ScheduleArgs {
    /// Number of sweeps.
    #[arg(long, default_value_t = annealer::DEFAULT_SWEEPS)]
    pub sweeps: usize,
    /// Initial flip probability [default: 0.04 for gdi, 0.2 for standard].
    #[arg(long)]
    pub flip_fraction: Option<f64>,
    /// Per-sweep decay of the flip probability.
    #[arg(long, default_value_t = annealer::DEFAULT_DECAY_RATE)]
    pub decay: f64,
    /// Base seed; run r uses seed + r.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads [default: available cores].
    #[arg(long, env = "ISING_WORKERS")]
    pub workers: Option<usize>,
    /// Single worker, fixed visit order: reproducible bit for bit.
    #[arg(long)]
    pub deterministic: bool,
}

impl ScheduleArgs {
    fn overrides(&self) -> ParamOverrides {
        ParamOverrides {
            sweeps: Some(self.sweeps),
            flip_fraction: self.flip_fraction,
            decay_rate: Some(self.decay),
            workers: self.workers,
            deterministic: self.deterministic,
        }
    }

    fn params(&self, strategy: &str) -> Result<AnnealParams, CliError> {
        let mut p = AnnealParams::for_strategy(strategy).map_err(CliError::usage)?;
        self.overrides().apply(&mut p, self.seed);
        p.validate().map_err(CliError::usage)?;
        Ok(p)
    }
}

#[derive(Debug, Clone, Args)]
pub struct ProblemArgs {
    /// Balance coefficient A, e.g. `0.25` or `1/4` [default: from --coeff-rule].
    #[arg(long)]
    pub coeff_a: Option<String>,
    /// Cut coefficient B.
    #[arg(long, default_value = "1")]
    pub coeff_b: String,
    /// How A follows from B when --coeff-a is absent.
    #[arg(long, default_value = "unit-move", value_parser = ["unit-move", "ground-state"])]
    pub coeff_rule: String,
    /// Treat every edge weight as 1.
    #[arg(long)]
    pub unit_weights: bool,
}

impl ProblemArgs {
    fn options(&self) -> Result<ProblemOptions, CliError> {
        let coeff_a = self
            .coeff_a
            .as_deref()
            .map(parse_coefficient)
            .transpose()
            .map_err(CliError::usage)?;
        let coeff_b = parse_coefficient(&self.coeff_b).map_err(CliError::usage)?;
        let rule: CoefficientRule = self.coeff_rule.parse().map_err(CliError::usage)?;
        Ok(ProblemOptions {
            unit_weights: self.unit_weights,
            coeff_a,
            coeff_b,
            rule,
        })
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// G-set file, or `synth:<id>` for a synthesized reference graph.
    pub graph: String,
    /// Balance strategy.
    #[arg(long, default_value = "gdi", value_parser = strategy_names())]
    pub algorithm: String,
    /// Independent seeded runs; the best is reported.
    #[arg(long, default_value_t = 1)]
    pub runs: usize,
    /// Write the best run's per-sweep trace as CSV.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    /// Include the final spin assignment (`+`/`-` per node) in the output.
    #[arg(long)]
    pub print_state: bool,
    #[command(flatten)]
    pub schedule: ScheduleArgs,
    #[command(flatten)]
    pub problem: ProblemArgs,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// G-set files and/or `synth:<id>` reference stand-ins.
    pub graphs: Vec<String>,
    /// Add stand-ins for every graph in the reference table.
    #[arg(long)]
    pub reference: bool,
    /// Comma-separated strategies.
    #[arg(long, default_value = "standard,gdi", value_delimiter = ',', value_parser = strategy_names())]
    pub algorithms: Vec<String>,
    /// Runs per (graph, strategy).
    #[arg(long, default_value_t = 10)]
    pub runs: usize,
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Report destination [default: stdout].
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// External results CSV (`graph_id,cut,bal,time_seconds`).
    #[arg(long)]
    pub external: Option<PathBuf>,
    /// Also write `timing.tsv` and `quality.tsv` into this directory.
    #[arg(long)]
    pub plot_dir: Option<PathBuf>,
    #[command(flatten)]
    pub schedule: ScheduleArgs,
    #[command(flatten)]
    pub problem: ProblemArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    /// G-set file with at most 24 nodes.
    pub graph: String,
    /// Largest allowed |sum of spins| [default: N mod 2].
    #[arg(long)]
    pub max_imbalance: Option<usize>,
    /// Balance strategy.
    #[arg(long, default_value = "gdi", value_parser = strategy_names())]
    pub algorithm: String,
    /// Annealer runs; the best is compared.
    #[arg(long, default_value_t = 20)]
    pub runs: usize,
    #[command(flatten)]
    pub schedule: ScheduleArgs,
    #[command(flatten)]
    pub problem: ProblemArgs,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// Reference graph id, e.g. G47.
    pub graph_id: String,
    /// Synthesis seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Destination [default: stdout].
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

fn strategy_names() -> Vec<&'static str> {
    annealer::registry().names()
}

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn usage(e: impl ToString) -> Self {
        Self {
            code: 2,
            message: e.to_string(),
        }
    }

    fn runtime(e: impl ToString) -> Self {
        Self {
            code: 1,
            message: e.to_string(),
        }
    }
}

impl From<BenchError> for CliError {
    fn from(e: BenchError) -> Self {
        match e {
            BenchError::Anneal(annealer::AnnealError::Runtime(_)) | BenchError::Output(_) => {
                Self::runtime(e)
            }
            _ => Self::usage(e),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        Self::runtime(e)
    }
}

struct Diag {
    level: i8,
}

impl Diag {
    fn warn(&self, msg: impl AsRef<str>) {
        if self.level >= 0 {
            eprintln!("{}", msg.as_ref());
        }
    }

    fn info(&self, msg: impl AsRef<str>) {
        if self.level >= 1 {
            eprintln!("{}", msg.as_ref());
        }
    }

    fn detail(&self, msg: impl AsRef<str>) {
        if self.level >= 2 {
            eprintln!("{}", msg.as_ref());
        }
    }
}

#[derive(Debug, Serialize)]
struct SolveOutput {
    graph: String,
    nodes: usize,
    edges: usize,
    cut: i64,
    imbalance: u64,
    hamiltonian: f64,
    seconds: f64,
    strategy: String,
    seed: u64,
    runs: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    state: Option<String>,
}

/// Parses `std::env::args` and runs; the process exit code.
pub fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

/// Runs a parsed command, returning the exit code on success.
pub fn run(cli: Cli) -> Result<u8, CliError> {
    let diag = Diag {
        level: if cli.quiet {
            -1
        } else {
            cli.verbose.min(2) as i8
        },
    };
    match cli.command {
        Command::Solve(a) => solve(a, &diag),
        Command::Bench(a) => run_bench(a, &diag),
        Command::OracleCheck(a) => oracle_check(a, &diag),
        Command::Generate(a) => generate(a),
    }
}

fn load_problem(graph: &str, options: &ProblemOptions) -> Result<MinCutProblem, CliError> {
    let source = GraphSource::parse(graph);
    Ok(options.build(source.load()?)?)
}

fn solve(a: SolveArgs, diag: &Diag) -> Result<u8, CliError> {
    if a.runs == 0 {
        return Err(CliError::usage("--runs must be at least 1"));
    }
    let params = a.schedule.params(&a.algorithm)?;
    let options = a.problem.options()?;
    let problem = load_problem(&a.graph, &options)?;
    diag.info(format!(
        "{}: {} nodes, {} edges, A = {}, B = {}, {} workers",
        a.graph,
        problem.num_nodes(),
        problem.graph().num_edges(),
        problem.coefficients().a(),
        problem.coefficients().b(),
        params.workers
    ));
    let result = bench::best_of(&problem, &params, a.runs).map_err(|e| match e {
        BenchError::Anneal(annealer::AnnealError::Config(m)) => CliError::usage(m),
        other => CliError::runtime(other),
    })?;
    for r in &result.runs {
        diag.detail(format!(
            "seed {}: cut {} imbalance {} ({:.3}s)",
            r.seed, r.cut, r.imbalance, r.seconds
        ));
    }
    if let Some(path) = &a.trace {
        let file = File::create(path)
            .map_err(|e| CliError::runtime(format!("{}: {e}", path.display())))?;
        result
            .best
            .trace
            .write_csv(BufWriter::new(file))
            .map_err(CliError::runtime)?;
    }
    let best = result.best_run();
    let out = SolveOutput {
        graph: a.graph.clone(),
        nodes: problem.num_nodes(),
        edges: problem.graph().num_edges(),
        cut: best.cut,
        imbalance: best.imbalance,
        hamiltonian: best.hamiltonian,
        seconds: best.seconds,
        strategy: result.best.strategy.to_string(),
        seed: best.seed,
        runs: a.runs,
        state: a.print_state.then(|| result.best.state.to_string()),
    };
    print_json(&out)?;
    Ok(0)
}

fn print_json<T: Serialize>(value: &T) -> Result<(), CliError> {
    let mut stdout = io::stdout().lock();
    serde_json::to_writer(&mut stdout, value).map_err(CliError::runtime)?;
    writeln!(stdout)?;
    Ok(())
}

fn run_bench(a: BenchArgs, diag: &Diag) -> Result<u8, CliError> {
    let mut graphs: Vec<GraphSource> = a.graphs.iter().map(|g| GraphSource::parse(g)).collect();
    if a.reference {
        graphs.extend(
            instances::reference_table()
                .into_iter()
                .map(|r| GraphSource::Synthetic {
                    graph_id: r.graph_id,
                    seed: 0,
                }),
        );
    }
    let config = BenchConfig {
        graphs,
        strategies: a.algorithms.clone(),
        runs_per_graph: a.runs,
        base_seed: a.schedule.seed,
        overrides: a.schedule.overrides(),
        problem: a.problem.options()?,
        format: match a.format {
            Format::Csv => OutputFormat::Csv,
            Format::Json => OutputFormat::Json,
        },
        external: a.external.clone(),
    };
    config.validate()?;
    for s in &config.strategies {
        a.schedule.params(s)?;
    }
    let external = config
        .external
        .as_deref()
        .map(bench::load_external_results)
        .transpose()?;
    diag.info(format!(
        "{} graphs x {} strategies x {} runs",
        config.graphs.len(),
        config.strategies.len(),
        config.runs_per_graph
    ));
    let reports = bench::run_benchmark(&config)?;
    for r in &reports {
        match &r.error {
            Some(e) => diag.warn(format!("{} ({}): {e}", r.graph_id, r.strategy)),
            None => diag.detail(format!(
                "{} {}: best cut {} imbalance {} mean {:.3}s/run",
                r.graph_id, r.strategy, r.best_cut, r.best_imbalance, r.mean_run_seconds
            )),
        }
    }
    match &a.output {
        Some(path) => {
            let file = File::create(path)
                .map_err(|e| CliError::runtime(format!("{}: {e}", path.display())))?;
            bench::write_reports(&reports, config.format, BufWriter::new(file))?;
        }
        None => bench::write_reports(&reports, config.format, io::stdout().lock())?,
    }
    if let Some(dir) = &a.plot_dir {
        let plot = bench::emit_plot_data(&reports, external.as_deref());
        std::fs::create_dir_all(dir)?;
        write_file(&dir.join("timing.tsv"), &plot.timing)?;
        write_file(&dir.join("quality.tsv"), &plot.quality)?;
    }
    Ok(0)
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::runtime(format!("{}: {e}", path.display())))
}

fn oracle_check(a: OracleArgs, diag: &Diag) -> Result<u8, CliError> {
    if a.runs == 0 {
        return Err(CliError::usage("--runs must be at least 1"));
    }
    let params = a.schedule.params(&a.algorithm)?;
    let options = a.problem.options()?;
    let problem = load_problem(&a.graph, &options)?;
    let n = problem.num_nodes();
    if n > ORACLE_MAX_NODES {
        return Err(CliError::usage(format!(
            "{n} nodes exceed the exhaustive search limit of {ORACLE_MAX_NODES}"
        )));
    }
    let bound = a.max_imbalance.unwrap_or(n % 2);
    let (optimum, witness) =
        brute_force_balanced_mincut(problem.graph(), bound).map_err(CliError::usage)?;
    diag.detail(format!("oracle witness {witness}"));
    let result = bench::best_of(&problem, &params, a.runs).map_err(CliError::runtime)?;
    let best = result.best_run();
    println!(
        "annealer cut {} imbalance {} (best of {})",
        best.cut, best.imbalance, a.runs
    );
    println!("oracle   cut {optimum} imbalance <= {bound}");
    let pass = best.imbalance as usize <= bound && best.cut == optimum;
    println!("{}", if pass { "PASS" } else { "FAIL" });
    Ok(if pass { 0 } else { 1 })
}

fn generate(a: GenerateArgs) -> Result<u8, CliError> {
    let source = GraphSource::Synthetic {
        graph_id: a.graph_id,
        seed: a.seed,
    };
    let text = source.load()?.to_gset();
    match &a.output {
        Some(path) => write_file(path, &text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(0)
}
