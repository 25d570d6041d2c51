//! Balanced min-cut graph bipartitioning by parallel Ising annealing.
//!
//! A bipartition is encoded as spins `σ_i ∈ {-1, +1}` and scored by the
//! Hamiltonian `A (Σσ)^2 + B · cut`. The [`annealer`] drives spins toward
//! low energy with local argmin updates plus decaying random flips, using
//! one of two interchangeable balance strategies:
//!
//! * `standard`: each visit re-sums every spin (complete-graph balance term).
//! * `gdi`: each visit reads a shared atomic balance counter and updates it.

pub mod annealer;
pub mod bench;
pub mod cli;
pub mod evaluator;
pub mod graph;
pub mod ising;

pub use annealer::{anneal, default_params_for, AnnealOutcome, AnnealParams, AnnealTrace};
pub use evaluator::{brute_force_balanced_mincut, cut_value, imbalance, PartitionScore};
pub use graph::{density, parse_gset, Graph, GraphError};
pub use ising::{Coefficients, MinCutProblem, SpinState};
