use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use rand::SeedableRng;
use tetris_core::oracle::SessionRng;
use tetris_core::{
    edge_count_estimator, exact_triangle_count, generate, random_walk, tetris_estimate, Algorithm,
    EstimatorConfig, Graph, OracleSession, RunOptions, WeightedIndexSampler,
};

fn graph() -> Graph {
    let mut rng = SessionRng::seed_from_u64(1);
    generate::holme_kim(20_000, 8, 0.8, &mut rng)
}

fn exact(c: &mut Criterion) {
    let g = graph();
    c.bench_function("exact_triangle_count/holme_kim_20k", |b| {
        b.iter(|| exact_triangle_count(black_box(&g)).triangles)
    });
}

fn walk_and_edges(c: &mut Criterion) {
    let g = graph();
    let mut group = c.benchmark_group("walk");
    for r in [10_000usize, 100_000] {
        group.throughput(Throughput::Elements(r as u64));
        group.bench_with_input(BenchmarkId::new("random_walk", r), &r, |b, &r| {
            b.iter(|| {
                let mut s = OracleSession::open(&g, 0, 7, false).unwrap();
                random_walk(&mut s, r, false).unwrap().degree_sum()
            })
        });
        let mut s = OracleSession::open(&g, 0, 7, false).unwrap();
        let trace = random_walk(&mut s, r, false).unwrap();
        group.bench_with_input(
            BenchmarkId::new("edge_count_estimator", r),
            &trace,
            |b, t| b.iter(|| edge_count_estimator(black_box(t), 25).unwrap()),
        );
        let sampler = WeightedIndexSampler::for_trace(&trace).unwrap();
        let mut rng = SessionRng::seed_from_u64(3);
        group.bench_with_input(BenchmarkId::new("sampler_draw", r), &sampler, |b, smp| {
            b.iter(|| smp.draw(&mut rng))
        });
    }
    group.finish();
}

fn estimators(c: &mut Criterion) {
    let g = graph();
    let cfg = EstimatorConfig::new(30_000, 1_500, 25).with_rng_seed(11);
    let opts = RunOptions::default();
    c.bench_function("tetris_estimate/r30k", |b| {
        b.iter(|| tetris_estimate(black_box(&g), &cfg, &opts).map(|o| o.estimate))
    });
    let mut group = c.benchmark_group("baselines");
    for algo in [
        Algorithm::VertexMcmc,
        Algorithm::Srw,
        Algorithm::Rws,
        Algorithm::Serwc,
    ] {
        group.bench_function(algo.name(), |b| {
            b.iter(|| algo.run(&g, &cfg, &opts).map(|e| e.value))
        });
    }
    group.finish();
}

criterion_group!(benches, exact, walk_and_edges, estimators);
criterion_main!(benches);
