use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rigiscope_bench::workloads;
use rigiscope_core::rigidity;

fn rank(c: &mut Criterion) {
    let mut group = c.benchmark_group("generic_rank");
    for (name, g) in workloads() {
        group.bench_with_input(BenchmarkId::new("field", &name), &g, |b, g| b.iter(|| rigidity::generic_rank(g, 3, 1)));
        group.bench_with_input(BenchmarkId::new("rational", &name), &g, |b, g| b.iter(|| rigidity::rational_rank(g, 1)));
    }
    group.finish();
}

fn sparsity(c: &mut Criterion) {
    let mut group = c.benchmark_group("pebble_game");
    for (name, g) in workloads() {
        group.bench_with_input(BenchmarkId::from_parameter(&name), &g, |b, g| {
            b.iter(|| rigiscope_core::sparsity::maxwell_check(g))
        });
    }
    group.finish();
}

criterion_group!(benches, rank, sparsity);
criterion_main!(benches);
