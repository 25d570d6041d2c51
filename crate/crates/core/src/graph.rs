//! Weighted undirected graphs in compressed adjacency form, plus the G-set
//! text format used by the max-cut / partitioning benchmark collections.
//!
//! The G-set format is whitespace delimited ASCII:
//!
//! ```text
//! N M
//! u v w      (M lines, 1-indexed endpoints, signed integer weight)
//! ```
//!
//! Lines starting with `%` or `#` and blank lines are ignored.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::io::Read;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: endpoint {endpoint} outside 1..={num_nodes}")]
    Range {
        line: usize,
        endpoint: i64,
        num_nodes: usize,
    },
    #[error("line {line}: self-loop on node {node}")]
    SelfLoop { line: usize, node: usize },
    #[error("line {line}: duplicate edge {u}-{v}")]
    Duplicate { line: usize, u: usize, v: usize },
    #[error("header declares {declared} edges but {found} edge lines were read")]
    EdgeCount { declared: usize, found: usize },
    #[error("{0}")]
    Domain(String),
    #[error("i/o error: {0}")]
    Io(String),
}

/// An undirected edge stored with `u < v`, 0-indexed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub u: u32,
    pub v: u32,
    pub weight: i64,
}

/// Immutable weighted undirected graph.
///
/// Adjacency is kept in CSR form (`offsets`, `targets`, `weights`); every
/// neighbor list is sorted by neighbor index, and `edges` holds each edge
/// once in canonical `(min, max)` order. Two graphs with the same edge set
/// compare equal regardless of the order the edges were supplied in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<u32>,
    weights: Vec<i64>,
    edges: Vec<Edge>,
    max_degree: usize,
}

impl Graph {
    /// Builds a graph from 0-indexed `(u, v, w)` triples.
    pub fn from_edges<I>(num_nodes: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize, i64)>,
    {
        let mut canonical = Vec::new();
        let mut seen = HashSet::new();
        for (idx, (u, v, w)) in edges.into_iter().enumerate() {
            let line = idx + 1;
            for endpoint in [u, v] {
                if endpoint >= num_nodes {
                    return Err(GraphError::Range {
                        line,
                        endpoint: endpoint as i64 + 1,
                        num_nodes,
                    });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop { line, node: u });
            }
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            if !seen.insert((a, b)) {
                return Err(GraphError::Duplicate { line, u: a, v: b });
            }
            canonical.push(Edge {
                u: a as u32,
                v: b as u32,
                weight: w,
            });
        }
        Self::from_checked(num_nodes, canonical)
    }

    fn from_checked(num_nodes: usize, mut edges: Vec<Edge>) -> Result<Self, GraphError> {
        if num_nodes == 0 {
            return Err(GraphError::Domain(
                "graph must have at least one node".into(),
            ));
        }
        if num_nodes > u32::MAX as usize {
            return Err(GraphError::Domain(format!(
                "{num_nodes} nodes exceeds u32 range"
            )));
        }
        edges.sort_unstable();

        let mut degree = vec![0usize; num_nodes];
        for e in &edges {
            degree[e.u as usize] += 1;
            degree[e.v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(num_nodes + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let total = *offsets.last().unwrap();
        let mut targets = vec![0u32; total];
        let mut weights = vec![0i64; total];
        let mut cursor = offsets[..num_nodes].to_vec();
        // Canonical (u, v) order yields sorted neighbor lists: lower
        // neighbors arrive first (as `v` of earlier edges), then higher ones.
        for e in &edges {
            let (u, v) = (e.u as usize, e.v as usize);
            targets[cursor[u]] = e.v;
            weights[cursor[u]] = e.weight;
            cursor[u] += 1;
            targets[cursor[v]] = e.u;
            weights[cursor[v]] = e.weight;
            cursor[v] += 1;
        }
        let max_degree = degree.iter().copied().max().unwrap_or(0);
        Ok(Self {
            offsets,
            targets,
            weights,
            edges,
            max_degree,
        })
    }

    pub fn num_nodes(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Maximum adjacency-list length (Δ).
    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn degree(&self, node: usize) -> usize {
        self.offsets[node + 1] - self.offsets[node]
    }

    /// Neighbor indices and edge weights of `node`, sorted by neighbor.
    #[inline]
    pub fn neighbors(&self, node: usize) -> (&[u32], &[i64]) {
        let range = self.offsets[node]..self.offsets[node + 1];
        (&self.targets[range.clone()], &self.weights[range])
    }

    /// Each edge once, `u < v`, ascending.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn has_unit_weights(&self) -> bool {
        self.edges.iter().all(|e| e.weight == 1)
    }

    /// Copy of the graph with every weight replaced by 1.
    pub fn with_unit_weights(&self) -> Self {
        let mut g = self.clone();
        g.weights.iter_mut().for_each(|w| *w = 1);
        g.edges.iter_mut().for_each(|e| e.weight = 1);
        g
    }

    /// Serializes to G-set text in canonical edge order.
    pub fn to_gset(&self) -> String {
        let mut out = String::with_capacity(16 * (self.edges.len() + 1));
        writeln!(out, "{} {}", self.num_nodes(), self.num_edges()).unwrap();
        for e in &self.edges {
            writeln!(out, "{} {} {}", e.u + 1, e.v + 1, e.weight).unwrap();
        }
        out
    }
}

/// Parses G-set text into a [`Graph`].
pub fn parse_gset(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('%') && !l.starts_with('#'));

    let (header_line, header) = lines.next().ok_or(GraphError::Parse {
        line: 1,
        message: "missing `N M` header".into(),
    })?;
    let header = parse_ints(header_line, header, 2)?;
    if header[0] <= 0 {
        return Err(GraphError::Parse {
            line: header_line,
            message: "node count must be positive".into(),
        });
    }
    if header[1] < 0 {
        return Err(GraphError::Parse {
            line: header_line,
            message: "edge count must be non-negative".into(),
        });
    }
    let num_nodes = header[0] as usize;
    let declared = header[1] as usize;

    let mut edges = Vec::with_capacity(declared.min(1 << 22));
    let mut seen = HashSet::with_capacity(declared.min(1 << 22));
    for (line, content) in lines {
        let fields = parse_ints(line, content, 3)?;
        let (u, v, w) = (fields[0], fields[1], fields[2]);
        for endpoint in [u, v] {
            if endpoint < 1 || endpoint > num_nodes as i64 {
                return Err(GraphError::Range {
                    line,
                    endpoint,
                    num_nodes,
                });
            }
        }
        let (u, v) = ((u - 1) as usize, (v - 1) as usize);
        if u == v {
            return Err(GraphError::SelfLoop { line, node: u });
        }
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        if !seen.insert((a, b)) {
            return Err(GraphError::Duplicate { line, u: a, v: b });
        }
        edges.push(Edge {
            u: a as u32,
            v: b as u32,
            weight: w,
        });
    }
    if edges.len() != declared {
        return Err(GraphError::EdgeCount {
            declared,
            found: edges.len(),
        });
    }
    Graph::from_checked(num_nodes, edges)
}

/// Reads a byte stream and parses it as G-set text.
pub fn read_gset<R: Read>(mut reader: R) -> Result<Graph, GraphError> {
    let mut buf = String::new();
    reader
        .read_to_string(&mut buf)
        .map_err(|e| GraphError::Io(e.to_string()))?;
    parse_gset(&buf)
}

fn parse_ints(line: usize, content: &str, expected: usize) -> Result<Vec<i64>, GraphError> {
    let fields: Vec<&str> = content.split_whitespace().collect();
    if fields.len() != expected {
        return Err(GraphError::Parse {
            line,
            message: format!("expected {expected} integers, found {}", fields.len()),
        });
    }
    fields
        .iter()
        .map(|f| {
            f.parse::<i64>().map_err(|_| GraphError::Parse {
                line,
                message: format!("`{f}` is not an integer"),
            })
        })
        .collect()
}

/// Edge density `2M / (N (N - 1))`.
pub fn density(graph: &Graph) -> Result<f64, GraphError> {
    let n = graph.num_nodes();
    if n < 2 {
        return Err(GraphError::Domain(format!(
            "density needs at least 2 nodes, got {n}"
        )));
    }
    Ok(2.0 * graph.num_edges() as f64 / (n as f64 * (n as f64 - 1.0)))
}
