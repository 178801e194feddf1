#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use citegraph::{CitationGraph, JournalCitationMatrix};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn node(i: usize) -> String {
    format!("n{i:02}")
}

/// Edge list over `n` nodes, each ordered pair present with probability `p`
/// and multiplicity 1..=3.
pub fn random_edges(n: usize, p: f64, seed: u64) -> Vec<(String, String)> {
    let mut r = rng(seed);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a != b && r.gen_bool(p) {
                for _ in 0..r.gen_range(1..=3) {
                    edges.push((node(a), node(b)));
                }
            }
        }
    }
    edges
}

/// Random graph in which every one of the `n` nodes is present.
pub fn random_graph(n: usize, p: f64, seed: u64) -> (CitationGraph, Vec<(String, String)>) {
    let mut edges = random_edges(n, p, seed);
    // Pin isolated nodes into the node set with a ring edge.
    let mut touched = vec![false; n];
    for (a, b) in &edges {
        touched[a[1..].parse::<usize>().unwrap()] = true;
        touched[b[1..].parse::<usize>().unwrap()] = true;
    }
    for i in (0..n).filter(|&i| !touched[i]) {
        edges.push((node(i), node((i + 1) % n)));
    }
    (CitationGraph::from_edges(edges.clone()).unwrap(), edges)
}

/// Dense `n x n` adjacency with multiplicity, indexed like `graph.ids()`.
pub fn dense_adjacency(graph: &CitationGraph) -> Vec<Vec<f64>> {
    let n = graph.node_count();
    let mut a = vec![vec![0.0; n]; n];
    for (x, y, m) in graph.edges() {
        a[graph.index_of(x).unwrap()][graph.index_of(y).unwrap()] += f64::from(m);
    }
    a
}

pub fn positive_matrix(n: usize, seed: u64) -> JournalCitationMatrix {
    let mut r = rng(seed);
    let rows = (0..n)
        .map(|_| (0..n).map(|_| r.gen_range(1..200)).collect())
        .collect();
    let pubs = (0..n).map(|_| r.gen_range(5..400)).collect();
    let ids = (0..n).map(|i| format!("J{i}")).collect();
    JournalCitationMatrix::new(ids, rows, pubs, None).unwrap()
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}
