use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use citegraph::eigen::{
    hits, influence_weights, pagerank, HitsParams, InfluenceParams, PageRankParams,
};
use citegraph::{CitationGraph, Execution, JournalCitationMatrix};

fn random_graph(nodes: usize, edges: usize, seed: u64) -> CitationGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut list = Vec::with_capacity(edges);
    while list.len() < edges {
        let a = rng.gen_range(0..nodes);
        let b = rng.gen_range(0..nodes);
        if a != b {
            list.push((format!("n{a}"), format!("n{b}")));
        }
    }
    CitationGraph::from_edges(list).unwrap()
}

fn random_matrix(n: usize, seed: u64) -> JournalCitationMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows = (0..n)
        .map(|_| (0..n).map(|_| rng.gen_range(1..50)).collect())
        .collect();
    let pubs = (0..n).map(|_| rng.gen_range(10..500)).collect();
    let ids = (0..n).map(|i| format!("J{i:04}")).collect();
    JournalCitationMatrix::new(ids, rows, pubs, None).unwrap()
}

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn bench_pagerank(c: &mut Criterion) {
    let mut group = c.benchmark_group("pagerank");
    group.sample_size(10);
    for &nodes in &[2_000usize, 50_000] {
        let g = random_graph(nodes, nodes * 8, 7);
        for (name, exec) in MODES {
            let params = PageRankParams {
                exec,
                ..Default::default()
            };
            group.bench_with_input(BenchmarkId::new(name, nodes), &g, |b, g| {
                b.iter(|| pagerank(g, &params).unwrap())
            });
        }
    }
    group.finish();
}

fn bench_hits(c: &mut Criterion) {
    let mut group = c.benchmark_group("hits");
    group.sample_size(10);
    for &nodes in &[2_000usize, 50_000] {
        let g = random_graph(nodes, nodes * 8, 11);
        for (name, exec) in MODES {
            let params = HitsParams {
                exec,
                max_iter: 50,
                ..Default::default()
            };
            group.bench_with_input(BenchmarkId::new(name, nodes), &g, |b, g| {
                b.iter(|| hits(g, &params).unwrap())
            });
        }
    }
    group.finish();
}

fn bench_influence(c: &mut Criterion) {
    let mut group = c.benchmark_group("influence");
    group.sample_size(10);
    for &n in &[64usize, 512] {
        let m = random_matrix(n, 3);
        for (name, exec) in MODES {
            let params = InfluenceParams {
                exec,
                ..Default::default()
            };
            group.bench_with_input(BenchmarkId::new(name, n), &m, |b, m| {
                b.iter(|| influence_weights(m, &params).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, bench_pagerank, bench_hits, bench_influence);
criterion_main!(benches);
