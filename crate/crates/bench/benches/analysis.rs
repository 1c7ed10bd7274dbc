use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rigiscope_bench::workloads;
use rigiscope_core::{analyze, flex_sign, rigidity, AnalysisOptions};

fn analysis(c: &mut Criterion) {
    let mut group = c.benchmark_group("analyze");
    group.sample_size(10);
    for (name, g) in workloads() {
        group.bench_with_input(BenchmarkId::from_parameter(&name), &g, |b, g| {
            b.iter(|| analyze(g, &AnalysisOptions::default()))
        });
    }
    group.finish();
}

fn implied(c: &mut Criterion) {
    let mut group = c.benchmark_group("implied_nonedges");
    for (name, g) in workloads() {
        group.bench_with_input(BenchmarkId::from_parameter(&name), &g, |b, g| b.iter(|| rigidity::implied_nonedges(g)));
    }
    group.finish();
}

fn flexsign(c: &mut Criterion) {
    let mut group = c.benchmark_group("flex_sign_certificate");
    group.sample_size(10);
    group.bench_function("k7", |b| b.iter(|| flex_sign::flex_sign_certificate(7, 1)));
    group.finish();
}

criterion_group!(benches, analysis, implied, flexsign);
criterion_main!(benches);
