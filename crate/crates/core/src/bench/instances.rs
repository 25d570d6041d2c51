//! Benchmark instances shaped like the G-set collection.
//!
//! The reference table lists, for each G-set graph used in the comparison,
//! its size, published solver results, and the generator family it came
//! from. When the original files are not available, [`synthesize`] builds a
//! deterministic stand-in with the same node count, edge count, family and
//! weight pattern:
//!
//! * `random`: `M` distinct node pairs drawn uniformly.
//! * `toroidal`: a 2D torus with 100 columns and `N / 100` rows.
//! * `planar`: union of two random maximal planar graphs on independently
//!   shuffled labels, trimmed to `M` edges.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::graph::{Graph, GraphError};

const TABLE_ONE: &str = include_str!("../../fixtures/table1.csv");

/// Published external-solver rows, in the external-results CSV format.
pub const METIS_TABLE_ONE: &str = include_str!("../../fixtures/metis_table1.csv");

const TORUS_COLUMNS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Random,
    Toroidal,
    Planar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightPattern {
    Unit,
    PlusMinusOne,
}

/// One row of the published comparison table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceRow {
    pub graph_id: String,
    pub nodes: usize,
    pub edges: usize,
    /// As printed, e.g. `2.0E-4`.
    pub density: String,
    pub family: Family,
    pub weights: WeightPattern,
    pub t_metis: f64,
    pub t_gdi: f64,
    pub t_std: f64,
    pub cut_metis: i64,
    pub cut_gdi: i64,
    pub cut_std: i64,
    pub bal_metis: u64,
    pub bal_gdi: u64,
    pub bal_std: u64,
}

/// The reference table, in published order.
pub fn reference_table() -> Vec<ReferenceRow> {
    csv::Reader::from_reader(TABLE_ONE.as_bytes())
        .deserialize()
        .collect::<Result<_, _>>()
        .expect("bundled reference table is well formed")
}

pub fn reference_row(graph_id: &str) -> Option<ReferenceRow> {
    reference_table()
        .into_iter()
        .find(|r| r.graph_id.eq_ignore_ascii_case(graph_id))
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Random => "random",
            Family::Toroidal => "toroidal",
            Family::Planar => "planar",
        })
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "random" => Ok(Family::Random),
            "toroidal" => Ok(Family::Toroidal),
            "planar" => Ok(Family::Planar),
            _ => Err(format!("unknown family `{s}`")),
        }
    }
}

/// Stand-in graph for a reference row, deterministic in `(row, seed)`.
pub fn synthesize(row: &ReferenceRow, seed: u64) -> Result<Graph, GraphError> {
    let id_number: u64 = row
        .graph_id
        .trim_start_matches(['G', 'g'])
        .parse()
        .unwrap_or(0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (id_number.wrapping_mul(0x9E37_79B9_7F4A_7C15)));
    let signed = row.weights == WeightPattern::PlusMinusOne;
    match row.family {
        Family::Random => random_graph(row.nodes, row.edges, signed, &mut rng),
        Family::Toroidal => {
            if !row.nodes.is_multiple_of(TORUS_COLUMNS) || 2 * row.nodes != row.edges {
                return Err(GraphError::Domain(format!(
                    "{}: {} nodes / {} edges is not a {TORUS_COLUMNS}-column torus",
                    row.graph_id, row.nodes, row.edges
                )));
            }
            toroidal_grid(row.nodes / TORUS_COLUMNS, TORUS_COLUMNS, signed, &mut rng)
        }
        Family::Planar => planar_union(row.nodes, row.edges, signed, &mut rng),
    }
}

fn weight<R: Rng>(signed: bool, rng: &mut R) -> i64 {
    if signed && rng.gen::<bool>() {
        -1
    } else {
        1
    }
}

/// `m` distinct pairs drawn uniformly from all `n (n - 1) / 2`.
pub fn random_graph<R: Rng>(
    n: usize,
    m: usize,
    signed: bool,
    rng: &mut R,
) -> Result<Graph, GraphError> {
    let possible = n * n.saturating_sub(1) / 2;
    if m > possible {
        return Err(GraphError::Domain(format!(
            "{m} edges exceed the {possible} possible on {n} nodes"
        )));
    }
    let mut seen = HashSet::with_capacity(m);
    let mut edges = Vec::with_capacity(m);
    while edges.len() < m {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u == v {
            continue;
        }
        let key = (u.min(v), u.max(v));
        if seen.insert(key) {
            edges.push((key.0, key.1, weight(signed, rng)));
        }
    }
    Graph::from_edges(n, edges)
}

/// Periodic 2D grid, each node joined to its right and lower neighbor.
pub fn toroidal_grid<R: Rng>(
    rows: usize,
    cols: usize,
    signed: bool,
    rng: &mut R,
) -> Result<Graph, GraphError> {
    if rows < 3 || cols < 3 {
        return Err(GraphError::Domain(format!(
            "torus needs at least 3x3, got {rows}x{cols}"
        )));
    }
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::with_capacity(2 * rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            edges.push((id(r, c), id(r, (c + 1) % cols), weight(signed, rng)));
            edges.push((id(r, c), id((r + 1) % rows, c), weight(signed, rng)));
        }
    }
    Graph::from_edges(rows * cols, edges)
}

/// Random stacked triangulation: each new node lands in a uniformly chosen
/// face and joins its three corners. Returns `3n - 6` edges.
fn maximal_planar<R: Rng>(n: usize, rng: &mut R) -> Vec<(usize, usize)> {
    let mut edges = vec![(0, 1), (1, 2), (0, 2)];
    let mut faces = vec![[0, 1, 2], [0, 1, 2]];
    for v in 3..n {
        let f = rng.gen_range(0..faces.len());
        let [a, b, c] = faces[f];
        edges.extend([(a, v), (b, v), (c, v)]);
        faces[f] = [a, b, v];
        faces.push([a, c, v]);
        faces.push([b, c, v]);
    }
    edges
}

/// Union of two relabeled maximal planar graphs, trimmed or topped up with
/// random pairs to exactly `m` edges.
pub fn planar_union<R: Rng>(
    n: usize,
    m: usize,
    signed: bool,
    rng: &mut R,
) -> Result<Graph, GraphError> {
    if n < 4 {
        return Err(GraphError::Domain(format!(
            "planar family needs at least 4 nodes, got {n}"
        )));
    }
    let mut seen = HashSet::new();
    let mut pairs = Vec::new();
    for _ in 0..2 {
        let mut label: Vec<usize> = (0..n).collect();
        label.shuffle(rng);
        for (u, v) in maximal_planar(n, rng) {
            let (a, b) = (label[u], label[v]);
            let key = (a.min(b), a.max(b));
            if seen.insert(key) {
                pairs.push(key);
            }
        }
    }
    pairs.shuffle(rng);
    pairs.truncate(m);
    let possible = n * (n - 1) / 2;
    if m > possible {
        return Err(GraphError::Domain(format!(
            "{m} edges exceed the {possible} possible on {n} nodes"
        )));
    }
    let mut kept: HashSet<_> = pairs.iter().copied().collect();
    while pairs.len() < m {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v && kept.insert((u.min(v), u.max(v))) {
            pairs.push((u.min(v), u.max(v)));
        }
    }
    let edges: Vec<_> = pairs
        .into_iter()
        .map(|(u, v)| (u, v, weight(signed, rng)))
        .collect();
    Graph::from_edges(n, edges)
}
