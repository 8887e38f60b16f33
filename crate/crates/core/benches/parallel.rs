//! Parallel vs sequential timings for the three heavy entry points.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use pseudocheck::cover::{oracle_pc_set, oracle_pc_set_seq, OracleGuards};
use pseudocheck::decode::{run_bsc_trials, run_bsc_trials_seq, MinSumConfig};
use pseudocheck::gf2::BitVec;
use pseudocheck::pseudo::{enumerate_pseudocodewords, enumerate_pseudocodewords_seq};
use pseudocheck::samples;

fn bench_cover_oracle(c: &mut Criterion) {
    let h = samples::cycle_4x7();
    let guards = OracleGuards::default();
    let mut group = c.benchmark_group("cover_oracle_m2");
    group.bench_function(BenchmarkId::new("par", "cycle_4x7"), |b| {
        b.iter(|| oracle_pc_set(&h, 2, &guards).unwrap())
    });
    group.bench_function(BenchmarkId::new("seq", "cycle_4x7"), |b| {
        b.iter(|| oracle_pc_set_seq(&h, 2, &guards).unwrap())
    });
    group.finish();
}

fn bench_enumeration(c: &mut Criterion) {
    let h = samples::redundant_6x12();
    let mut group = c.benchmark_group("enumerate_bound3");
    group.sample_size(20);
    group.bench_function(BenchmarkId::new("par", "redundant_6x12"), |b| {
        b.iter(|| enumerate_pseudocodewords(&h, 3, u64::MAX).unwrap())
    });
    group.bench_function(BenchmarkId::new("seq", "redundant_6x12"), |b| {
        b.iter(|| enumerate_pseudocodewords_seq(&h, 3, u64::MAX).unwrap())
    });
    group.finish();
}

fn bench_decode_trials(c: &mut Criterion) {
    let h = samples::stacked_7x7();
    let word = BitVec::zeros(7);
    let cfg = MinSumConfig::default();
    let mut group = c.benchmark_group("bsc_trials_2000");
    group.bench_function(BenchmarkId::new("par", "stacked_7x7"), |b| {
        b.iter(|| run_bsc_trials(&h, &word, 0.08, 2000, 1, &cfg, &[]).unwrap())
    });
    group.bench_function(BenchmarkId::new("seq", "stacked_7x7"), |b| {
        b.iter(|| run_bsc_trials_seq(&h, &word, 0.08, 2000, 1, &cfg, &[]).unwrap())
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_cover_oracle,
    bench_enumeration,
    bench_decode_trials
);
criterion_main!(benches);
