//! Partition scoring and an exhaustive balanced min-cut oracle.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::ising::{cut_weight, global_hamiltonian, MinCutProblem, SpinState};

/// Largest graph the oracle will enumerate.
pub const ORACLE_MAX_NODES: usize = 24;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("spin vector has length {got}, graph has {expected} nodes")]
    Length { got: usize, expected: usize },
    #[error("oracle limited to {max} nodes, graph has {nodes}")]
    Capacity { nodes: usize, max: usize },
    #[error("no state of {nodes} nodes has imbalance <= {max_imbalance}")]
    Parity { nodes: usize, max_imbalance: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PartitionScore {
    pub cut: i64,
    pub imbalance: u64,
    /// `A·(Σσ)² + B·cut` as a float; exact value via [`global_hamiltonian`].
    pub hamiltonian: f64,
}

fn check_len(graph: &Graph, state: &SpinState) -> Result<(), EvalError> {
    if state.len() != graph.num_nodes() {
        return Err(EvalError::Length {
            got: state.len(),
            expected: graph.num_nodes(),
        });
    }
    Ok(())
}

/// Total weight of edges whose endpoints carry different spins.
pub fn cut_value(graph: &Graph, state: &SpinState) -> Result<i64, EvalError> {
    check_len(graph, state)?;
    Ok(cut_weight(graph, state.spins()))
}

/// `|Σ σ_i|`, i.e. `||V1| - |V2||`.
pub fn imbalance(state: &SpinState) -> u64 {
    state.sum().unsigned_abs()
}

pub fn score(problem: &MinCutProblem, state: &SpinState) -> Result<PartitionScore, EvalError> {
    let cut = cut_value(problem.graph(), state)?;
    let h = global_hamiltonian(problem, state).map_err(|_| EvalError::Length {
        got: state.len(),
        expected: problem.num_nodes(),
    })?;
    Ok(PartitionScore {
        cut,
        imbalance: imbalance(state),
        hamiltonian: *h.numer() as f64 / *h.denom() as f64,
    })
}

/// Exact minimum cut over all states with imbalance `<= max_imbalance`.
///
/// Only states with `σ_0 = +1` are enumerated (negation leaves cut and
/// imbalance unchanged). Among optimal states the lexicographically smallest
/// one, ordering `-1 < +1`, is returned as the witness.
pub fn brute_force_balanced_mincut(
    graph: &Graph,
    max_imbalance: usize,
) -> Result<(i64, SpinState), EvalError> {
    let n = graph.num_nodes();
    if n > ORACLE_MAX_NODES {
        return Err(EvalError::Capacity {
            nodes: n,
            max: ORACLE_MAX_NODES,
        });
    }
    if max_imbalance < n % 2 {
        return Err(EvalError::Parity {
            nodes: n,
            max_imbalance,
        });
    }

    // Bit i of a mask is set when node i sits at +1. Node 0 is pinned to +1.
    // The lexicographic key puts node 0 in the most significant position.
    let edges: Vec<(u32, u32, i64)> = graph.edges().iter().map(|e| (e.u, e.v, e.weight)).collect();
    let lex_key = |mask: u32| -> u32 { (0..n).fold(0u32, |acc, i| (acc << 1) | ((mask >> i) & 1)) };

    let mut best: Option<(i64, u32, u32)> = None;
    let rest = n - 1;
    for ones in 0..=n {
        let diff = (2 * ones as i64 - n as i64).unsigned_abs() as usize;
        if ones == 0 || diff > max_imbalance {
            continue;
        }
        // Choose the other `ones - 1` positive nodes among nodes 1..n with a
        // Gosper walk over fixed-popcount masks.
        let k = ones - 1;
        let mut sub: u32 = if k == 0 { 0 } else { (1u32 << k) - 1 };
        let limit: u32 = 1u32 << rest;
        loop {
            let mask = (sub << 1) | 1;
            let cut: i64 = edges
                .iter()
                .filter(|&&(u, v, _)| ((mask >> u) ^ (mask >> v)) & 1 == 1)
                .map(|&(_, _, w)| w)
                .sum();
            let better = match best {
                None => true,
                Some((bc, bk, _)) => cut < bc || (cut == bc && lex_key(mask) < bk),
            };
            if better {
                best = Some((cut, lex_key(mask), mask));
            }
            if k == 0 {
                break;
            }
            let c = sub & sub.wrapping_neg();
            let r = sub + c;
            let next = (((r ^ sub) >> 2) / c) | r;
            if next >= limit || next == 0 {
                break;
            }
            sub = next;
        }
    }

    let (cut, _, mask) = best.expect("feasible imbalance admits at least one state");
    let spins = (0..n)
        .map(|i| if (mask >> i) & 1 == 1 { 1 } else { -1 })
        .collect();
    Ok((cut, SpinState::new(spins).expect("spins are +-1")))
}
