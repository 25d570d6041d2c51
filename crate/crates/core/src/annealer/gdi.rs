use super::strategy::{BalanceStrategy, SweepView};
use super::GDI_FLIP_FRACTION;

/// Globally decoupled balance: one shared counter `G = Σσ`, read once per
/// visit and updated with a single atomic add of the visit's net change.
///
/// Cost per sweep is `O(N + E)`. The counter is exact at every sweep
/// barrier because every spin change, argmin or random flip, goes through
/// [`BalanceStrategy::record_change`].
#[derive(Debug, Clone, Copy, Default)]
pub struct GloballyDecoupled;

impl BalanceStrategy for GloballyDecoupled {
    fn name(&self) -> &'static str {
        "gdi"
    }

    fn description(&self) -> &'static str {
        "shared atomic balance counter"
    }

    fn default_flip_fraction(&self) -> f64 {
        GDI_FLIP_FRACTION
    }

    fn balance_excluding(&self, view: &SweepView<'_>, _node: usize, current: i8) -> i64 {
        view.counter.load() - current as i64
    }

    fn record_change(&self, view: &SweepView<'_>, old: i8, new: i8) {
        view.counter.add((new - old) as i64);
    }

    fn maintains_counter(&self) -> bool {
        true
    }
}
