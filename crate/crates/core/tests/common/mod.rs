#![allow(dead_code)]

use std::collections::VecDeque;

use ising_partition::Graph;
use proptest::prelude::*;
use rand::Rng;

/// Erdos-Renyi graph with independent edge probability `p`.
pub fn gnp<R: Rng>(n: usize, p: f64, weights: &[i64], rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v, weights[rng.gen_range(0..weights.len())]));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

pub fn is_connected(g: &Graph) -> bool {
    let n = g.num_nodes();
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    let mut count = 1;
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u).0 {
            if !seen[v as usize] {
                seen[v as usize] = true;
                count += 1;
                queue.push_back(v as usize);
            }
        }
    }
    count == n
}

/// Unit-weight `G(n, p)` redrawn until connected.
pub fn connected_gnp<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    loop {
        let g = gnp(n, p, &[1], rng);
        if is_connected(&g) {
            return g;
        }
    }
}

/// Small graphs with weights in `-3..=3` excluding 0.
pub fn arb_graph(max_nodes: usize) -> impl Strategy<Value = Graph> {
    (1..=max_nodes).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        let m = pairs.len();
        (
            Just(n),
            Just(pairs),
            proptest::collection::vec(any::<bool>(), m),
            proptest::collection::vec(prop_oneof![-3i64..=-1, 1i64..=3], m),
        )
            .prop_map(|(n, pairs, keep, w)| {
                let edges = pairs
                    .into_iter()
                    .zip(keep)
                    .zip(w)
                    .filter(|((_, k), _)| *k)
                    .map(|(((u, v), _), w)| (u, v, w));
                Graph::from_edges(n, edges).unwrap()
            })
    })
}

/// A graph together with a spin assignment of matching length.
pub fn arb_graph_and_spins(max_nodes: usize) -> impl Strategy<Value = (Graph, Vec<i8>)> {
    arb_graph(max_nodes).prop_flat_map(|g| {
        let n = g.num_nodes();
        (
            Just(g),
            proptest::collection::vec(prop_oneof![Just(-1i8), Just(1i8)], n),
        )
    })
}
