//! Benchmark harness: best-of-R runs per (graph, strategy), reports sorted by
//! density, comparison against externally produced results, and tab-separated
//! plot data.

pub mod instances;

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::annealer::{self, anneal, AnnealError, AnnealOutcome, AnnealParams};
use crate::evaluator::{cut_value, imbalance};
use crate::graph::{density, read_gset, Graph, GraphError};
use crate::ising::{CoefficientRule, Coefficients, IsingError, MinCutProblem, Rational};

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("invalid benchmark config: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Graph { path: String, source: GraphError },
    #[error(transparent)]
    Coefficients(#[from] IsingError),
    #[error(transparent)]
    Anneal(#[from] AnnealError),
    #[error("external results: {0}")]
    External(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("output error: {0}")]
    Output(String),
}

/// Where a benchmark graph comes from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum GraphSource {
    File(PathBuf),
    /// Stand-in for a reference-table graph, built by [`instances::synthesize`].
    Synthetic {
        graph_id: String,
        seed: u64,
    },
}

impl GraphSource {
    /// `synth:G47` (optionally `synth:G47@5` for synthesis seed 5) or a path.
    pub fn parse(text: &str) -> Self {
        match text.strip_prefix("synth:") {
            Some(rest) => {
                let (id, seed) = rest.split_once('@').unwrap_or((rest, "0"));
                GraphSource::Synthetic {
                    graph_id: id.to_string(),
                    seed: seed.parse().unwrap_or(0),
                }
            }
            None => GraphSource::File(PathBuf::from(text)),
        }
    }

    pub fn id(&self) -> String {
        match self {
            GraphSource::File(p) => p
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| p.display().to_string()),
            GraphSource::Synthetic { graph_id, .. } => graph_id.clone(),
        }
    }

    pub fn load(&self) -> Result<Graph, BenchError> {
        match self {
            GraphSource::File(path) => load_graph(path),
            GraphSource::Synthetic { graph_id, seed } => {
                let row = instances::reference_row(graph_id).ok_or_else(|| BenchError::Graph {
                    path: format!("synth:{graph_id}"),
                    source: GraphError::Domain(format!("no reference row named {graph_id}")),
                })?;
                instances::synthesize(&row, *seed).map_err(|source| BenchError::Graph {
                    path: format!("synth:{graph_id}"),
                    source,
                })
            }
        }
    }
}

pub fn load_graph(path: &Path) -> Result<Graph, BenchError> {
    let file = File::open(path).map_err(|e| BenchError::Graph {
        path: path.display().to_string(),
        source: GraphError::Io(e.to_string()),
    })?;
    read_gset(std::io::BufReader::new(file)).map_err(|source| BenchError::Graph {
        path: path.display().to_string(),
        source,
    })
}

/// How a graph becomes a [`MinCutProblem`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemOptions {
    /// Replace every edge weight by 1.
    pub unit_weights: bool,
    /// Explicit `A`; derived from `coeff_b` by `rule` when absent.
    #[serde(with = "opt_ratio")]
    pub coeff_a: Option<Rational>,
    #[serde(with = "ratio")]
    pub coeff_b: Rational,
    #[serde(skip)]
    pub rule: CoefficientRule,
}

impl Default for ProblemOptions {
    fn default() -> Self {
        Self {
            unit_weights: false,
            coeff_a: None,
            coeff_b: Rational::from_integer(1),
            rule: CoefficientRule::default(),
        }
    }
}

impl ProblemOptions {
    pub fn build(&self, graph: Graph) -> Result<MinCutProblem, BenchError> {
        let graph = if self.unit_weights {
            graph.with_unit_weights()
        } else {
            graph
        };
        let coefficients = match self.coeff_a {
            Some(a) => Coefficients::new(a, self.coeff_b)?,
            None => self.rule.coefficients(&graph, self.coeff_b)?,
        };
        Ok(MinCutProblem::new_unchecked(graph, coefficients))
    }
}

mod ratio {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        crate::ising::parse_coefficient(&text).map_err(serde::de::Error::custom)
    }
}

mod opt_ratio {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_some(&r.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|t| crate::ising::parse_coefficient(&t).map_err(serde::de::Error::custom))
            .transpose()
    }
}

/// Per-field overrides applied on top of a strategy's defaults.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ParamOverrides {
    pub sweeps: Option<usize>,
    pub flip_fraction: Option<f64>,
    pub decay_rate: Option<f64>,
    pub workers: Option<usize>,
    pub deterministic: bool,
}

impl ParamOverrides {
    pub fn params_for(
        &self,
        strategy: &str,
        graph: &Graph,
        seed: u64,
    ) -> Result<AnnealParams, AnnealError> {
        let mut p = annealer::default_params_for(strategy, graph)?;
        self.apply(&mut p, seed);
        p.validate()?;
        Ok(p)
    }

    /// Overwrites the fields that are set; forces one worker when deterministic.
    pub fn apply(&self, p: &mut AnnealParams, seed: u64) {
        if let Some(v) = self.sweeps {
            p.sweeps = v;
        }
        if let Some(v) = self.flip_fraction {
            p.flip_fraction0 = v;
        }
        if let Some(v) = self.decay_rate {
            p.decay_rate = v;
        }
        if let Some(v) = self.workers {
            p.workers = v;
        }
        p.seed = seed;
        if self.deterministic {
            p.deterministic = true;
            p.workers = 1;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchConfig {
    pub graphs: Vec<GraphSource>,
    pub strategies: Vec<String>,
    pub runs_per_graph: usize,
    /// Run `r` uses seed `base_seed + r`.
    pub base_seed: u64,
    pub overrides: ParamOverrides,
    pub problem: ProblemOptions,
    pub format: OutputFormat,
    pub external: Option<PathBuf>,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            graphs: Vec::new(),
            strategies: vec!["gdi".into()],
            runs_per_graph: 10,
            base_seed: 0,
            overrides: ParamOverrides::default(),
            problem: ProblemOptions::default(),
            format: OutputFormat::Csv,
            external: None,
        }
    }
}

impl BenchConfig {
    pub fn validate(&self) -> Result<(), BenchError> {
        if self.runs_per_graph == 0 {
            return Err(BenchError::Config(
                "runs per graph must be at least 1".into(),
            ));
        }
        if self.strategies.is_empty() {
            return Err(BenchError::Config("select at least one strategy".into()));
        }
        for s in &self.strategies {
            if annealer::registry().get(s).is_none() {
                return Err(BenchError::Config(format!("unknown strategy `{s}`")));
            }
        }
        Ok(())
    }
}

/// One annealing run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub seed: u64,
    pub cut: i64,
    pub imbalance: u64,
    pub hamiltonian: f64,
    pub seconds: f64,
    pub mean_sweep_seconds: f64,
}

/// Outcome of `runs` independent seeds on one problem.
#[derive(Debug, Clone)]
pub struct BestOf {
    pub runs: Vec<RunResult>,
    /// Index into `runs` of the most balanced, then lowest-cut run.
    pub best_index: usize,
    pub best: AnnealOutcome,
}

impl BestOf {
    pub fn best_run(&self) -> &RunResult {
        &self.runs[self.best_index]
    }
}

/// Runs `runs` seeds (`base.seed`, `base.seed + 1`, ...) and keeps the best.
pub fn best_of(
    problem: &MinCutProblem,
    base: &AnnealParams,
    runs: usize,
) -> Result<BestOf, BenchError> {
    if runs == 0 {
        return Err(BenchError::Config("runs must be at least 1".into()));
    }
    let mut results = Vec::with_capacity(runs);
    let mut best: Option<(usize, AnnealOutcome)> = None;
    for r in 0..runs {
        let mut params = base.clone();
        params.seed = base.seed.wrapping_add(r as u64);
        let t0 = Instant::now();
        let outcome = anneal(problem, &params)?;
        let seconds = t0.elapsed().as_secs_f64();
        let cut = cut_value(problem.graph(), &outcome.state).expect("lengths agree");
        let imb = imbalance(&outcome.state);
        let h = outcome
            .trace
            .records
            .last()
            .map(|t| t.hamiltonian)
            .unwrap_or_default();
        results.push(RunResult {
            seed: params.seed,
            cut,
            imbalance: imb,
            hamiltonian: h,
            seconds,
            mean_sweep_seconds: outcome.trace.mean_sweep_seconds(),
        });
        let better = match &best {
            None => true,
            Some((i, _)) => (imb, cut) < (results[*i].imbalance, results[*i].cut),
        };
        if better {
            best = Some((r, outcome));
        }
    }
    let (best_index, best) = best.expect("at least one run");
    Ok(BestOf {
        runs: results,
        best_index,
        best,
    })
}

/// One benchmark row: a graph solved `R` times with one strategy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub graph_id: String,
    pub nodes: usize,
    pub edges: usize,
    pub density: f64,
    pub strategy: String,
    pub best_cut: i64,
    pub best_imbalance: u64,
    pub mean_cut: f64,
    pub min_cut: i64,
    pub max_cut: i64,
    /// Wall time of the best run.
    pub best_run_seconds: f64,
    pub mean_run_seconds: f64,
    pub mean_sweep_seconds: f64,
    pub run_seconds: Vec<f64>,
    pub seeds: Vec<u64>,
    pub error: Option<String>,
}

impl RunReport {
    fn from_best(graph_id: &str, graph: &Graph, strategy: &str, b: &BestOf) -> Self {
        let cuts: Vec<i64> = b.runs.iter().map(|r| r.cut).collect();
        let n = b.runs.len() as f64;
        Self {
            graph_id: graph_id.to_string(),
            nodes: graph.num_nodes(),
            edges: graph.num_edges(),
            density: density(graph).unwrap_or(0.0),
            strategy: strategy.to_string(),
            best_cut: b.best_run().cut,
            best_imbalance: b.best_run().imbalance,
            mean_cut: cuts.iter().sum::<i64>() as f64 / n,
            min_cut: *cuts.iter().min().expect("non-empty"),
            max_cut: *cuts.iter().max().expect("non-empty"),
            best_run_seconds: b.best_run().seconds,
            mean_run_seconds: b.runs.iter().map(|r| r.seconds).sum::<f64>() / n,
            mean_sweep_seconds: b.runs.iter().map(|r| r.mean_sweep_seconds).sum::<f64>() / n,
            run_seconds: b.runs.iter().map(|r| r.seconds).collect(),
            seeds: b.runs.iter().map(|r| r.seed).collect(),
            error: None,
        }
    }

    fn failed(graph_id: &str, strategy: &str, error: String) -> Self {
        Self {
            graph_id: graph_id.to_string(),
            nodes: 0,
            edges: 0,
            density: 0.0,
            strategy: strategy.to_string(),
            best_cut: 0,
            best_imbalance: 0,
            mean_cut: 0.0,
            min_cut: 0,
            max_cut: 0,
            best_run_seconds: 0.0,
            mean_run_seconds: 0.0,
            mean_sweep_seconds: 0.0,
            run_seconds: Vec::new(),
            seeds: Vec::new(),
            error: Some(error),
        }
    }
}

/// Runs every (graph, strategy) pair; rows come back sorted by density.
///
/// A graph that fails to load yields one error row per strategy and the
/// remaining graphs still run. Error rows sort first (density 0).
pub fn run_benchmark(config: &BenchConfig) -> Result<Vec<RunReport>, BenchError> {
    config.validate()?;
    let mut reports = Vec::new();
    for source in &config.graphs {
        let id = source.id();
        let problem = match source.load().and_then(|g| config.problem.build(g)) {
            Ok(p) => p,
            Err(e) => {
                for s in &config.strategies {
                    reports.push(RunReport::failed(&id, s, e.to_string()));
                }
                continue;
            }
        };
        for s in &config.strategies {
            let params = config
                .overrides
                .params_for(s, problem.graph(), config.base_seed)
                .map_err(|e| BenchError::Config(e.to_string()))?;
            let b = best_of(&problem, &params, config.runs_per_graph)?;
            reports.push(RunReport::from_best(&id, problem.graph(), s, &b));
        }
    }
    reports.sort_by(|a, b| a.density.total_cmp(&b.density));
    Ok(reports)
}

/// Writes reports as CSV; list fields are `;`-joined.
pub fn write_reports_csv<W: Write>(reports: &[RunReport], writer: W) -> Result<(), BenchError> {
    let mut w = csv::Writer::from_writer(writer);
    let out = |e: csv::Error| BenchError::Output(e.to_string());
    w.write_record([
        "graph_id",
        "nodes",
        "edges",
        "density",
        "strategy",
        "best_cut",
        "best_imbalance",
        "mean_cut",
        "min_cut",
        "max_cut",
        "best_run_seconds",
        "mean_run_seconds",
        "mean_sweep_seconds",
        "run_seconds",
        "seeds",
        "error",
    ])
    .map_err(out)?;
    let join = |v: Vec<String>| v.join(";");
    for r in reports {
        w.write_record([
            r.graph_id.clone(),
            r.nodes.to_string(),
            r.edges.to_string(),
            r.density.to_string(),
            r.strategy.clone(),
            r.best_cut.to_string(),
            r.best_imbalance.to_string(),
            r.mean_cut.to_string(),
            r.min_cut.to_string(),
            r.max_cut.to_string(),
            r.best_run_seconds.to_string(),
            r.mean_run_seconds.to_string(),
            r.mean_sweep_seconds.to_string(),
            join(r.run_seconds.iter().map(|s| s.to_string()).collect()),
            join(r.seeds.iter().map(|s| s.to_string()).collect()),
            r.error.clone().unwrap_or_default(),
        ])
        .map_err(out)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_reports<W: Write>(
    reports: &[RunReport],
    format: OutputFormat,
    mut writer: W,
) -> Result<(), BenchError> {
    match format {
        OutputFormat::Csv => write_reports_csv(reports, writer),
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut writer, reports)
                .map_err(|e| BenchError::Output(e.to_string()))?;
            writeln!(writer)?;
            Ok(())
        }
    }
}

/// A result row produced by some other partitioner.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExternalResult {
    pub graph_id: String,
    pub cut: i64,
    pub bal: u64,
    pub time_seconds: f64,
}

const EXTERNAL_HEADER: [&str; 4] = ["graph_id", "cut", "bal", "time_seconds"];

/// Reads `graph_id,cut,bal,time_seconds` CSV; the header is required.
pub fn read_external_results<R: Read>(reader: R) -> Result<Vec<ExternalResult>, BenchError> {
    let mut rdr = csv::Reader::from_reader(reader);
    let header = rdr
        .headers()
        .map_err(|e| BenchError::External(e.to_string()))?
        .clone();
    let got: Vec<&str> = header.iter().map(str::trim).collect();
    if got != EXTERNAL_HEADER {
        return Err(BenchError::External(format!(
            "expected header `{}`, found `{}`",
            EXTERNAL_HEADER.join(","),
            got.join(",")
        )));
    }
    rdr.deserialize()
        .map(|r| r.map_err(|e| BenchError::External(e.to_string())))
        .collect()
}

pub fn load_external_results(path: &Path) -> Result<Vec<ExternalResult>, BenchError> {
    let file =
        File::open(path).map_err(|e| BenchError::External(format!("{}: {e}", path.display())))?;
    read_external_results(file)
}

/// Tab-separated tables for plotting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlotData {
    /// `graph_id density nodes t_standard t_gdi sweep_standard sweep_gdi`.
    pub timing: String,
    /// `graph_id density cut_standard cut_gdi bal_standard bal_gdi cut_external bal_external`.
    pub quality: String,
}

const ABSENT: &str = "NA";

/// Builds timing and quality tables, one row per graph in density order.
///
/// Times are mean seconds per run. Missing strategies or external rows are
/// written as `NA`.
pub fn emit_plot_data(reports: &[RunReport], external: Option<&[ExternalResult]>) -> PlotData {
    let mut graphs: Vec<(String, f64, usize)> = Vec::new();
    let mut by_key: BTreeMap<(String, String), &RunReport> = BTreeMap::new();
    for r in reports.iter().filter(|r| r.error.is_none()) {
        if !graphs.iter().any(|(id, _, _)| id == &r.graph_id) {
            graphs.push((r.graph_id.clone(), r.density, r.nodes));
        }
        by_key.insert((r.graph_id.clone(), r.strategy.clone()), r);
    }
    graphs.sort_by(|a, b| a.1.total_cmp(&b.1));
    let ext: BTreeMap<&str, &ExternalResult> = external
        .unwrap_or_default()
        .iter()
        .map(|e| (e.graph_id.as_str(), e))
        .collect();

    let get = |id: &str, s: &str| by_key.get(&(id.to_string(), s.to_string())).copied();
    let fmt = |v: Option<String>| v.unwrap_or_else(|| ABSENT.to_string());

    let mut timing =
        String::from("graph_id\tdensity\tnodes\tt_standard\tt_gdi\tsweep_standard\tsweep_gdi\n");
    let mut quality = String::from(
        "graph_id\tdensity\tcut_standard\tcut_gdi\tbal_standard\tbal_gdi\tcut_external\tbal_external\n",
    );
    for (id, d, n) in &graphs {
        let std = get(id, "standard");
        let gdi = get(id, "gdi");
        timing.push_str(&format!(
            "{id}\t{d}\t{n}\t{}\t{}\t{}\t{}\n",
            fmt(std.map(|r| r.mean_run_seconds.to_string())),
            fmt(gdi.map(|r| r.mean_run_seconds.to_string())),
            fmt(std.map(|r| r.mean_sweep_seconds.to_string())),
            fmt(gdi.map(|r| r.mean_sweep_seconds.to_string())),
        ));
        let e = ext.get(id.as_str());
        quality.push_str(&format!(
            "{id}\t{d}\t{}\t{}\t{}\t{}\t{}\t{}\n",
            fmt(std.map(|r| r.best_cut.to_string())),
            fmt(gdi.map(|r| r.best_cut.to_string())),
            fmt(std.map(|r| r.best_imbalance.to_string())),
            fmt(gdi.map(|r| r.best_imbalance.to_string())),
            fmt(e.map(|e| e.cut.to_string())),
            fmt(e.map(|e| e.bal.to_string())),
        ));
    }
    PlotData { timing, quality }
}
