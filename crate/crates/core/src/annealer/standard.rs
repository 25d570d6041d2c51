use super::strategy::{BalanceStrategy, SweepView};
use super::GDI_FLIP_FRACTION;

/// Complete-graph balance term: every visit re-reads the whole spin array.
///
/// Cost per sweep is `O(N^2)`. Neighbor spins are read while other workers
/// may be writing them.
#[derive(Debug, Clone, Copy, Default)]
pub struct Standard;

/// The standard update sees a near-exact balance and settles more readily,
/// so it needs a larger random-flip probability.
pub const STANDARD_FLIP_MULTIPLIER: f64 = 5.0;

impl BalanceStrategy for Standard {
    fn name(&self) -> &'static str {
        "standard"
    }

    fn description(&self) -> &'static str {
        "full spin-sum traversal per visit"
    }

    fn default_flip_fraction(&self) -> f64 {
        STANDARD_FLIP_MULTIPLIER * GDI_FLIP_FRACTION
    }

    fn balance_excluding(&self, view: &SweepView<'_>, _node: usize, current: i8) -> i64 {
        view.spins.sum() - current as i64
    }

    fn record_change(&self, _view: &SweepView<'_>, _old: i8, _new: i8) {}

    fn maintains_counter(&self) -> bool {
        false
    }
}
