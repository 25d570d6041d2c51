//! The annealing loop.
//!
//! Spins start uniformly random. Each of `sweeps` sweeps visits every node
//! once: the node takes the spin with the lower candidate energy (a coin
//! decides ties), then flips with probability `P_f`. `P_f` starts at
//! `flip_fraction0` and is multiplied by `decay_rate` after every sweep.
//!
//! With more than one worker, nodes are claimed in ascending chunks from a
//! shared counter and spins are read without synchronization; a barrier
//! closes each sweep. Deterministic mode runs one worker on the calling
//! thread in index order and is bit-reproducible for a given seed.

mod cells;
pub mod gdi;
pub mod standard;
pub mod strategy;

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Barrier, Condvar, Mutex};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use cells::SpinCells;
pub use strategy::{registry, BalanceStrategy, StrategyRegistry, SweepView};

use crate::graph::Graph;
use crate::ising::{
    candidate_energies_with, choose_spin, cut_weight, BalanceCounter, MinCutProblem, SpinState,
};

/// Base random-flip probability for the decoupled strategy.
pub const GDI_FLIP_FRACTION: f64 = 0.04;
pub const DEFAULT_DECAY_RATE: f64 = 0.99;
pub const DEFAULT_SWEEPS: usize = 1000;

/// Nodes claimed per fetch from the shared visit counter.
const CLAIM_CHUNK: usize = 64;

#[derive(Debug, Error)]
pub enum AnnealError {
    #[error("invalid parameters: {0}")]
    Config(String),
    #[error("worker pool failure: {0}")]
    Runtime(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnnealParams {
    pub sweeps: usize,
    pub flip_fraction0: f64,
    pub decay_rate: f64,
    pub strategy: String,
    pub workers: usize,
    pub seed: u64,
    pub deterministic: bool,
}

impl AnnealParams {
    pub fn validate(&self) -> Result<(), AnnealError> {
        self.validate_schedule()?;
        if registry().get(&self.strategy).is_none() {
            return Err(AnnealError::Config(format!(
                "unknown strategy `{}` (known: {})",
                self.strategy,
                registry().names().join(", ")
            )));
        }
        Ok(())
    }

    /// Checks everything except the strategy name.
    fn validate_schedule(&self) -> Result<(), AnnealError> {
        let fail = |m: String| Err(AnnealError::Config(m));
        if self.sweeps == 0 {
            return fail("sweeps must be at least 1".into());
        }
        if !(0.0..=1.0).contains(&self.flip_fraction0) {
            return fail(format!(
                "flip fraction {} outside [0, 1]",
                self.flip_fraction0
            ));
        }
        if !(self.decay_rate > 0.0 && self.decay_rate < 1.0) {
            return fail(format!("decay rate {} outside (0, 1)", self.decay_rate));
        }
        if self.workers == 0 {
            return fail("workers must be at least 1".into());
        }
        if self.deterministic && self.workers != 1 {
            return fail(format!(
                "deterministic mode requires 1 worker, got {}",
                self.workers
            ));
        }
        Ok(())
    }

    /// Sets deterministic mode, forcing a single worker.
    pub fn deterministic(mut self, on: bool) -> Self {
        self.deterministic = on;
        if on {
            self.workers = 1;
        }
        self
    }
}

/// `flip_fraction0 · decay_rate^k`.
pub fn flip_probability(params: &AnnealParams, sweep: usize) -> f64 {
    params.flip_fraction0 * params.decay_rate.powi(sweep as i32)
}

pub fn available_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Default parameters for a named strategy.
pub fn default_params_for(strategy: &str, _graph: &Graph) -> Result<AnnealParams, AnnealError> {
    AnnealParams::for_strategy(strategy)
}

impl AnnealParams {
    /// Defaults for a registered strategy; no graph needed.
    pub fn for_strategy(strategy: &str) -> Result<Self, AnnealError> {
        let s = registry()
            .get(strategy)
            .ok_or_else(|| AnnealError::Config(format!("unknown strategy `{strategy}`")))?;
        Ok(AnnealParams {
            sweeps: DEFAULT_SWEEPS,
            flip_fraction0: s.default_flip_fraction(),
            decay_rate: DEFAULT_DECAY_RATE,
            strategy: s.name().to_string(),
            workers: available_workers(),
            seed: 0,
            deterministic: false,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub sweep: usize,
    /// Global Hamiltonian in units of `1 / scale` of the coefficients.
    pub hamiltonian_scaled: i64,
    pub hamiltonian: f64,
    pub cut: i64,
    pub imbalance: u64,
    /// Exact `Σσ` recomputed at the barrier.
    pub balance: i64,
    /// Shared counter value at the barrier, for strategies that keep one.
    pub counter: Option<i64>,
    pub flip_probability: f64,
    pub sweep_seconds: f64,
    pub elapsed_seconds: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct AnnealTrace {
    pub records: Vec<TraceRecord>,
}

impl AnnealTrace {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Mean wall time of one sweep, excluding barrier bookkeeping.
    pub fn mean_sweep_seconds(&self) -> f64 {
        if self.records.is_empty() {
            return 0.0;
        }
        self.records.iter().map(|r| r.sweep_seconds).sum::<f64>() / self.records.len() as f64
    }

    /// Writes one CSV row per sweep.
    pub fn write_csv<W: std::io::Write>(&self, writer: W) -> Result<(), csv::Error> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record([
            "sweep",
            "hamiltonian",
            "cut",
            "imbalance",
            "balance",
            "counter",
            "flip_probability",
            "sweep_seconds",
            "elapsed_seconds",
        ])?;
        for r in &self.records {
            w.write_record([
                r.sweep.to_string(),
                r.hamiltonian.to_string(),
                r.cut.to_string(),
                r.imbalance.to_string(),
                r.balance.to_string(),
                r.counter.map(|c| c.to_string()).unwrap_or_default(),
                r.flip_probability.to_string(),
                r.sweep_seconds.to_string(),
                r.elapsed_seconds.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct AnnealOutcome {
    pub state: SpinState,
    pub trace: AnnealTrace,
    pub strategy: &'static str,
    /// Wall time of the sweeps, excluding setup.
    pub seconds: f64,
    pub visits: u64,
}

/// One node visit, reported to an observer in deterministic mode.
pub struct Visit<'a> {
    pub sweep: usize,
    pub node: usize,
    pub before: i8,
    /// Spin chosen by the argmin step.
    pub chosen: i8,
    /// Spin after the optional random flip.
    pub after: i8,
    pub spins: &'a SpinCells,
    pub counter: &'a BalanceCounter,
}

/// Runs the annealer with the strategy named in `params`.
pub fn anneal(
    problem: &MinCutProblem,
    params: &AnnealParams,
) -> Result<AnnealOutcome, AnnealError> {
    params.validate()?;
    let strategy = registry().get(&params.strategy).expect("validated");
    anneal_with(problem, params, strategy.as_ref(), None)
}

/// Deterministic run that reports every node visit to `observer`.
pub fn anneal_observed(
    problem: &MinCutProblem,
    params: &AnnealParams,
    observer: &mut dyn FnMut(&Visit<'_>),
) -> Result<AnnealOutcome, AnnealError> {
    params.validate()?;
    if !params.deterministic {
        return Err(AnnealError::Config(
            "visit observers require deterministic mode".into(),
        ));
    }
    let strategy = registry().get(&params.strategy).expect("validated");
    anneal_with(problem, params, strategy.as_ref(), Some(observer))
}

/// Runs the annealer with an explicit strategy, which need not be registered.
pub fn anneal_with(
    problem: &MinCutProblem,
    params: &AnnealParams,
    strategy: &dyn BalanceStrategy,
    observer: Option<&mut dyn FnMut(&Visit<'_>)>,
) -> Result<AnnealOutcome, AnnealError> {
    params.validate_schedule()?;
    let n = problem.num_nodes();
    let mut init_rng = stream_rng(params.seed, 0);
    let initial = SpinState::random(n, &mut init_rng);
    let shared = Shared {
        problem,
        params,
        strategy,
        spins: SpinCells::from_state(&initial),
        counter: BalanceCounter::from_state(&initial),
        claim: AtomicUsize::new(0),
        trace: Mutex::new(Vec::with_capacity(params.sweeps)),
        visits: AtomicUsize::new(0),
    };

    let start = Instant::now();
    if params.deterministic || params.workers == 1 {
        run_sequential(&shared, start, observer);
    } else {
        run_parallel(&shared, start)?;
    }
    let seconds = start.elapsed().as_secs_f64();

    let records = shared.trace.into_inner().expect("trace lock poisoned");
    Ok(AnnealOutcome {
        state: shared.spins.snapshot(),
        trace: AnnealTrace { records },
        strategy: strategy.name(),
        seconds,
        visits: shared.visits.load(Ordering::Relaxed) as u64,
    })
}

/// Independent stream per `(seed, stream)`; stream 0 initializes spins and
/// stream `w + 1` drives worker `w`.
fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

struct Shared<'a> {
    problem: &'a MinCutProblem,
    params: &'a AnnealParams,
    strategy: &'a dyn BalanceStrategy,
    spins: SpinCells,
    counter: BalanceCounter,
    claim: AtomicUsize,
    trace: Mutex<Vec<TraceRecord>>,
    visits: AtomicUsize,
}

impl Shared<'_> {
    #[inline]
    fn visit<R: Rng>(&self, node: usize, flip_p: f64, rng: &mut R) -> (i8, i8, i8) {
        let view = SweepView {
            spins: &self.spins,
            counter: &self.counter,
        };
        let before = self.spins.load(node);
        let balance_excl = self.strategy.balance_excluding(&view, node, before);
        let energies = candidate_energies_with(
            &self.problem.coefficients(),
            self.problem.graph(),
            node,
            balance_excl,
            |j| self.spins.load(j),
        );
        let chosen = choose_spin(energies, rng);
        let u: f64 = rng.gen();
        let after = if flip_p > 0.0 && u <= flip_p {
            -chosen
        } else {
            chosen
        };
        if after != before {
            self.spins.store(node, after);
        }
        self.strategy.record_change(&view, before, after);
        (before, chosen, after)
    }

    /// Bookkeeping at the end of a sweep; runs while all workers are parked.
    fn close_sweep(&self, sweep: usize, flip_p: f64, sweep_seconds: f64, elapsed: f64) {
        let state = self.spins.snapshot();
        let balance = state.sum();
        let cut = cut_weight(self.problem.graph(), state.spins());
        let c = self.problem.coefficients();
        let scaled = c.scaled_a() * balance * balance + c.scaled_b() * cut;
        let record = TraceRecord {
            sweep,
            hamiltonian_scaled: scaled,
            hamiltonian: scaled as f64 / c.scale() as f64,
            cut,
            imbalance: balance.unsigned_abs(),
            balance,
            counter: self
                .strategy
                .maintains_counter()
                .then(|| self.counter.load()),
            flip_probability: flip_p,
            sweep_seconds,
            elapsed_seconds: elapsed,
        };
        self.trace.lock().expect("trace lock poisoned").push(record);
    }
}

fn run_sequential(
    shared: &Shared<'_>,
    start: Instant,
    mut observer: Option<&mut dyn FnMut(&Visit<'_>)>,
) {
    let n = shared.problem.num_nodes();
    let mut rng = stream_rng(shared.params.seed, 1);
    for sweep in 0..shared.params.sweeps {
        let p = flip_probability(shared.params, sweep);
        let t0 = Instant::now();
        for node in 0..n {
            let (before, chosen, after) = shared.visit(node, p, &mut rng);
            if let Some(obs) = observer.as_deref_mut() {
                obs(&Visit {
                    sweep,
                    node,
                    before,
                    chosen,
                    after,
                    spins: &shared.spins,
                    counter: &shared.counter,
                });
            }
        }
        shared.visits.fetch_add(n, Ordering::Relaxed);
        let dt = t0.elapsed().as_secs_f64();
        shared.close_sweep(sweep, p, dt, start.elapsed().as_secs_f64());
    }
}

/// Gate holding spawned workers until every worker exists.
struct StartGate {
    state: Mutex<Option<bool>>,
    cv: Condvar,
}

impl StartGate {
    fn new() -> Self {
        Self {
            state: Mutex::new(None),
            cv: Condvar::new(),
        }
    }

    fn open(&self, go: bool) {
        *self.state.lock().expect("gate lock poisoned") = Some(go);
        self.cv.notify_all();
    }

    fn wait(&self) -> bool {
        let guard = self.state.lock().expect("gate lock poisoned");
        let guard = self
            .cv
            .wait_while(guard, |s| s.is_none())
            .expect("gate lock poisoned");
        guard.unwrap_or(false)
    }
}

fn run_parallel(shared: &Shared<'_>, start: Instant) -> Result<(), AnnealError> {
    let workers = shared.params.workers;
    let n = shared.problem.num_nodes();
    let barrier = Barrier::new(workers);
    let gate = StartGate::new();
    let sweep_start = Mutex::new(Instant::now());

    std::thread::scope(|scope| {
        let mut handles = Vec::with_capacity(workers);
        for worker in 0..workers {
            let (barrier, gate, sweep_start) = (&barrier, &gate, &sweep_start);
            let spawned = std::thread::Builder::new()
                .name(format!("anneal-{worker}"))
                .spawn_scoped(scope, move || {
                    if !gate.wait() {
                        return;
                    }
                    let mut rng = stream_rng(shared.params.seed, worker as u64 + 1);
                    for sweep in 0..shared.params.sweeps {
                        let p = flip_probability(shared.params, sweep);
                        let mut visited = 0usize;
                        loop {
                            let first = shared.claim.fetch_add(CLAIM_CHUNK, Ordering::AcqRel);
                            if first >= n {
                                break;
                            }
                            let last = (first + CLAIM_CHUNK).min(n);
                            for node in first..last {
                                shared.visit(node, p, &mut rng);
                            }
                            visited += last - first;
                        }
                        shared.visits.fetch_add(visited, Ordering::Relaxed);
                        if barrier.wait().is_leader() {
                            let mut t0 = sweep_start.lock().expect("timer lock poisoned");
                            let dt = t0.elapsed().as_secs_f64();
                            shared.close_sweep(sweep, p, dt, start.elapsed().as_secs_f64());
                            shared.claim.store(0, Ordering::Release);
                            *t0 = Instant::now();
                        }
                        barrier.wait();
                    }
                });
            match spawned {
                Ok(h) => handles.push(h),
                Err(e) => {
                    gate.open(false);
                    return Err(AnnealError::Runtime(format!(
                        "spawning worker {worker}: {e}"
                    )));
                }
            }
        }
        *sweep_start.lock().expect("timer lock poisoned") = Instant::now();
        gate.open(true);
        for h in handles {
            h.join()
                .map_err(|_| AnnealError::Runtime("annealer worker panicked".into()))?;
        }
        Ok(())
    })
}
