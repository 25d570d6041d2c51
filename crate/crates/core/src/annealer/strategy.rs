//! Balance-evaluation strategies and the registry that selects them by name.
//!
//! Both strategies share the same visit loop; they differ only in how a
//! node learns the spin sum of every other node and in what bookkeeping a
//! spin change requires.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use super::cells::SpinCells;
use crate::ising::BalanceCounter;

/// Shared sweep state visible to a strategy during one node visit.
pub struct SweepView<'a> {
    pub spins: &'a SpinCells,
    pub counter: &'a BalanceCounter,
}

pub trait BalanceStrategy: Send + Sync {
    /// Registry key, also used on the command line.
    fn name(&self) -> &'static str;

    fn description(&self) -> &'static str;

    /// Initial random-flip probability used when none is given.
    fn default_flip_fraction(&self) -> f64;

    /// Spin sum over all nodes except `node`, whose current spin is `current`.
    fn balance_excluding(&self, view: &SweepView<'_>, node: usize, current: i8) -> i64;

    /// Called once per visit with the spin before and after the visit.
    fn record_change(&self, view: &SweepView<'_>, old: i8, new: i8);

    /// Whether the shared counter is maintained and meaningful.
    fn maintains_counter(&self) -> bool;
}

impl fmt::Debug for dyn BalanceStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BalanceStrategy")
            .field("name", &self.name())
            .finish()
    }
}

/// Name-indexed set of strategies.
#[derive(Default, Clone)]
pub struct StrategyRegistry {
    entries: BTreeMap<&'static str, Arc<dyn BalanceStrategy>>,
}

impl StrategyRegistry {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Registry holding `standard` and `gdi`.
    pub fn builtin() -> Self {
        let mut r = Self::empty();
        r.register(Arc::new(super::standard::Standard));
        r.register(Arc::new(super::gdi::GloballyDecoupled));
        r
    }

    /// Adds a strategy, replacing any previous one of the same name.
    pub fn register(&mut self, strategy: Arc<dyn BalanceStrategy>) {
        self.entries.insert(strategy.name(), strategy);
    }

    pub fn get(&self, name: &str) -> Option<Arc<dyn BalanceStrategy>> {
        self.entries.get(name).cloned()
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.keys().copied().collect()
    }
}

/// Process-wide registry of the built-in strategies.
pub fn registry() -> &'static StrategyRegistry {
    static REGISTRY: OnceLock<StrategyRegistry> = OnceLock::new();
    REGISTRY.get_or_init(StrategyRegistry::builtin)
}
