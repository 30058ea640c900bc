use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hpofla_bench::fixture;
use hpofla_core::gower::distance_matrix;
use hpofla_core::pipeline::analyze;
use hpofla_core::{Command, DiagnosticsParams, OutputOptions, Provenance};

fn distances(c: &mut Criterion) {
    let mut group = c.benchmark_group("distance_matrix");
    group.sample_size(20);
    for rows in [250, 1000] {
        let sample = fixture(rows);
        group.bench_with_input(BenchmarkId::from_parameter(rows), &sample, |b, s| {
            b.iter(|| distance_matrix(s).unwrap())
        });
    }
    group.finish();
}

fn full_pipeline(c: &mut Criterion) {
    let sample = fixture(1000);
    let params = DiagnosticsParams::default();
    let options = OutputOptions { plots: true, ..OutputOptions::default() };
    let mut group = c.benchmark_group("pipeline");
    group.sample_size(10);
    group.bench_function("all_1000x15", |b| {
        b.iter(|| {
            let a = analyze(sample.clone(), Command::All, &params).unwrap();
            a.render(Command::All, &Provenance::default(), options).unwrap()
        })
    });
    group.finish();
}

criterion_group!(benches, distances, full_pipeline);
criterion_main!(benches);
