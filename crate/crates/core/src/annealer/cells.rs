use std::sync::atomic::{AtomicI8, Ordering};

use crate::ising::SpinState;

/// Spin array shared between workers. Each cell is read and written
/// atomically; reads across cells are unsynchronized.
pub struct SpinCells(Vec<AtomicI8>);

impl SpinCells {
    pub fn from_state(state: &SpinState) -> Self {
        Self(state.spins().iter().map(|&s| AtomicI8::new(s)).collect())
    }

    #[inline]
    pub fn load(&self, i: usize) -> i8 {
        self.0[i].load(Ordering::Relaxed)
    }

    #[inline]
    pub fn store(&self, i: usize, spin: i8) {
        self.0[i].store(spin, Ordering::Relaxed)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Full traversal of the current spin values.
    #[inline]
    pub fn sum(&self) -> i64 {
        self.0
            .iter()
            .map(|c| c.load(Ordering::Relaxed) as i64)
            .sum()
    }

    pub fn snapshot(&self) -> SpinState {
        SpinState::new(self.0.iter().map(|c| c.load(Ordering::Relaxed)).collect())
            .expect("cells only ever hold +-1")
    }
}
