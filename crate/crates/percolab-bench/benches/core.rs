//! Benchmarks for the hot paths: percolation sampling, hitting times,
//! regular-graph generation, connectivity testing, connected-set
//! enumeration, and the eigensolver.

use criterion::{criterion_group, criterion_main, Criterion};
use percolab_core::graph::{hypercube, random_regular};
use percolab_core::process::{
    connectivity_hitting_time, is_k_connected, percolate, process_permutation,
    sample_connected,
};
use percolab_core::spectral::{for_each_connected_set, second_eigenvalue};
use std::hint::black_box;
use std::ops::ControlFlow;

fn bench_percolate(c: &mut Criterion) {
    let q10 = hypercube(10).unwrap();
    c.bench_function("percolate_q10_half", |b| {
        let mut seed = 0u64;
        b.iter(|| {
            seed = seed.wrapping_add(1);
            let sample = percolate(&q10, 0.5, seed).unwrap();
            black_box(sample.retained_count())
        })
    });
    c.bench_function("percolate_q10_connected", |b| {
        let sample = percolate(&q10, 0.6, 7).unwrap();
        b.iter(|| black_box(sample_connected(&q10, &sample)))
    });
}

fn bench_hitting(c: &mut Criterion) {
    let q8 = hypercube(8).unwrap();
    c.bench_function("hitting_time_q8", |b| {
        let mut seed = 0u64;
        b.iter(|| {
            seed = seed.wrapping_add(1);
            let trace = process_permutation(&q8, seed);
            black_box(connectivity_hitting_time(&q8, &trace).unwrap())
        })
    });
}

fn bench_generate(c: &mut Criterion) {
    c.bench_function("random_regular_1000_10", |b| {
        let mut seed = 0u64;
        b.iter(|| {
            seed = seed.wrapping_add(1);
            black_box(random_regular(1000, 10, seed).unwrap().m())
        })
    });
}

fn bench_connectivity(c: &mut Criterion) {
    let q8 = hypercube(8).unwrap();
    c.bench_function("is_2_connected_q8", |b| {
        b.iter(|| black_box(is_k_connected(&q8, 2)))
    });
}

fn bench_enumeration(c: &mut Criterion) {
    let q4 = hypercube(4).unwrap();
    c.bench_function("connected_sets_q4_size5", |b| {
        b.iter(|| {
            let mut count = 0u64;
            for_each_connected_set(&q4, 5, &mut |_, _| {
                count += 1;
                ControlFlow::Continue(())
            });
            black_box(count)
        })
    });
}

fn bench_spectral(c: &mut Criterion) {
    let q8 = hypercube(8).unwrap();
    c.bench_function("second_eigenvalue_q8", |b| {
        b.iter(|| black_box(second_eigenvalue(&q8, 1e-8).unwrap().lambda2))
    });
}

criterion_group!(
    benches,
    bench_percolate,
    bench_hitting,
    bench_generate,
    bench_connectivity,
    bench_enumeration,
    bench_spectral
);
criterion_main!(benches);
