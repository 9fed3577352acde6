use std::hint::black_box;

use bnconsensus::consensus::{heuristic_consensus, ConsensusInstance};
use bnconsensus::generate::{add_forward_arcs, random_dag, random_order};
use bnconsensus::mdi::{method_b2, TieBreak};
use bnconsensus::separation::Separator;
use bnconsensus::transform::g2h;
use bnconsensus::CardinalityMap;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn percolation(c: &mut Criterion) {
    let mut group = c.benchmark_group("method_b2");
    group.sample_size(10);
    for n in [25, 50, 100, 200] {
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        let g = random_dag(n, 0.5, &mut rng);
        let alpha = random_order(n, &mut rng);
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| method_b2(black_box(&g), black_box(&alpha), &TieBreak::Corrected).unwrap())
        });
    }
    group.finish();
}

fn transformation(c: &mut Criterion) {
    let mut group = c.benchmark_group("g2h");
    group.sample_size(10);
    for n in [25, 50, 100] {
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        let g = random_dag(n, 0.5, &mut rng);
        let alpha = random_order(n, &mut rng);
        let h = add_forward_arcs(
            &method_b2(&g, &alpha, &TieBreak::Corrected).unwrap(),
            &alpha,
            0.1,
            &mut rng,
        );
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| g2h(black_box(&g), black_box(&h)).unwrap())
        });
    }
    group.finish();
}

fn separation(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let g = random_dag(60, 0.1, &mut rng);
    let sep = Separator::new(&g);
    let z: Vec<usize> = (10..30).collect();
    c.bench_function("separated n=60", |b| {
        b.iter(|| sep.separated(black_box(&[0, 1]), black_box(&[55, 59]), black_box(&z)))
    });
}

fn consensus(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let n = 40;
    let dags = (0..3).map(|_| random_dag(n, 0.2, &mut rng)).collect();
    let inst = ConsensusInstance::new(dags, CardinalityMap::uniform(n, 2).unwrap(), None).unwrap();
    let alpha = random_order(n, &mut rng);
    c.bench_function("heuristic_consensus m=3 n=40", |b| {
        b.iter(|| heuristic_consensus(black_box(&inst), black_box(&alpha)).unwrap())
    });
}

criterion_group!(benches, percolation, transformation, separation, consensus);
criterion_main!(benches);
