use std::hint::black_box;
use std::sync::Arc;

use arcwalk::random::random_graph_sized;
use arcwalk::{
    adjacency, arc_graph_n, char_poly, compare_battery, graph_iso, tree_partition, Graph,
};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn sized(nodes: usize, arcs: usize) -> Arc<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64((nodes * 1000 + arcs) as u64);
    Arc::new(random_graph_sized(&mut rng, nodes, arcs))
}

/// The same graph with nodes and arcs listed in a shuffled order.
fn shuffled(g: &Graph) -> Arc<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut nodes = g.nodes().to_vec();
    let mut arcs: Vec<_> = g
        .arcs()
        .iter()
        .map(|a| {
            (
                a.id.clone(),
                g.node_id(a.source).to_string(),
                g.node_id(a.target).to_string(),
            )
        })
        .collect();
    nodes.shuffle(&mut rng);
    arcs.shuffle(&mut rng);
    Arc::new(Graph::new("H", nodes, arcs).unwrap())
}

fn charpoly(c: &mut Criterion) {
    let mut group = c.benchmark_group("charpoly");
    for n in [8, 16, 32] {
        let a = adjacency(&sized(n, 3 * n));
        group.bench_with_input(BenchmarkId::from_parameter(n), &a, |b, a| {
            b.iter(|| char_poly(black_box(a)))
        });
    }
    group.finish();
}

fn partition(c: &mut Criterion) {
    let mut group = c.benchmark_group("tree_partition");
    for n in [50, 200, 1000] {
        let g = sized(n, 2 * n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| {
            b.iter(|| tree_partition(black_box(g)))
        });
    }
    group.finish();
}

fn arc_graphs(c: &mut Criterion) {
    let mut group = c.benchmark_group("arc_graph_n");
    let g = sized(10, 20);
    for n in [1, 2, 3] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| arc_graph_n(black_box(&g), n))
        });
    }
    group.finish();
}

fn isomorphism(c: &mut Criterion) {
    let mut group = c.benchmark_group("graph_iso");
    for n in [20, 80, 320] {
        let g = sized(n, 3 * n);
        let h = shuffled(&g);
        group.bench_with_input(BenchmarkId::from_parameter(n), &(g, h), |b, (g, h)| {
            b.iter(|| graph_iso(black_box(g), black_box(h)))
        });
    }
    group.finish();
}

fn battery(c: &mut Criterion) {
    let x = sized(12, 30);
    let y = shuffled(&x);
    c.bench_function("compare_battery/12", |b| {
        b.iter(|| compare_battery(black_box(&x), black_box(&y), 12))
    });
}

criterion_group!(
    benches,
    charpoly,
    partition,
    arc_graphs,
    isomorphism,
    battery
);
criterion_main!(benches);
