//! Benchmarks for the hot kernels: catalog enumeration, one transfer
//! step, and the backtracking oracle.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use census_core::graph::count_ham_cycles_oracle;
use census_core::sides::enumerate_side_intersections;
use census_core::signatures::enumerate_signatures;
use census_core::Engine;

fn bench_catalogs(c: &mut Criterion) {
    c.bench_function("sides/k=4", |b| {
        b.iter(|| enumerate_side_intersections(black_box(4)))
    });
    c.bench_function("signatures/k=3", |b| {
        b.iter(|| enumerate_signatures(black_box(3)))
    });
    let mut slow = c.benchmark_group("signatures-large");
    slow.sample_size(10);
    slow.bench_function("signatures/k=4", |b| {
        b.iter(|| enumerate_signatures(black_box(4)))
    });
    slow.finish();
}

fn bench_transfer_step(c: &mut Criterion) {
    for k in [3usize, 4] {
        let engine = Engine::new(k);
        // March a few columns past the seed so the vector carries values
        // of realistic size.
        let mut state = engine.initial().expect("seed state");
        for _ in 0..10 {
            state = engine.step(&state);
        }
        c.bench_function(&format!("transfer-step/k={k}"), |b| {
            b.iter(|| engine.step(black_box(&state)))
        });
    }
}

fn bench_oracle(c: &mut Criterion) {
    c.bench_function("oracle/G(12,3)", |b| {
        b.iter(|| count_ham_cycles_oracle(black_box(12), black_box(3)).unwrap())
    });
    c.bench_function("oracle/G(12,4)", |b| {
        b.iter(|| count_ham_cycles_oracle(black_box(12), black_box(4)).unwrap())
    });
}

criterion_group!(kernels, bench_catalogs, bench_transfer_step, bench_oracle);
criterion_main!(kernels);
