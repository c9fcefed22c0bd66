use std::hint::black_box;

use albanese_core::albanese::run_pipeline;
use albanese_core::catalog;
use albanese_core::exactlin::{hermite_normal_form, smith_normal_form, IntMatrix};
use albanese_core::invariants::compute_invariants;
use albanese_core::oracle::{fixed_point_agreement, DEFAULT_POINT_CAP};
use criterion::{criterion_group, criterion_main, Criterion};

fn normal_forms(c: &mut Criterion) {
    let m = IntMatrix::from_i64_rows(&[
        &[3, -5, 2, 0, 1, 4],
        &[1, 2, -3, 5, 0, -2],
        &[4, 0, 1, -1, 2, 3],
        &[-2, 5, 4, 3, -3, 1],
        &[0, 1, 5, -4, 2, 2],
        &[5, -1, 0, 2, 4, -5],
    ]);
    c.bench_function("hermite 6x6", |b| b.iter(|| hermite_normal_form(black_box(&m))));
    c.bench_function("smith 6x6", |b| b.iter(|| smith_normal_form(black_box(&m))));
}

fn pipeline(c: &mut Criterion) {
    let mut group = c.benchmark_group("pipeline");
    for name in [
        "bielliptic-7",
        "z4-threefold",
        "zmzm-threefold-m3",
        "small-irregularity-cyclic",
    ] {
        let doc = catalog::export_entry(name).unwrap();
        group.bench_function(format!("{name} build"), |b| b.iter(|| doc.to_datum().unwrap()));
        let mut d = doc.to_datum().unwrap();
        d.validate();
        group.bench_function(format!("{name} albanese"), |b| {
            b.iter(|| run_pipeline(black_box(&d), true).unwrap())
        });
        group.bench_function(format!("{name} invariants"), |b| {
            b.iter(|| compute_invariants(black_box(&d)).unwrap())
        });
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    let d = catalog::export_entry("z4-threefold").unwrap().to_datum().unwrap();
    group.bench_function("z4-threefold fixed points", |b| {
        b.iter(|| fixed_point_agreement(black_box(&d), DEFAULT_POINT_CAP).unwrap())
    });
    group.finish();
}

criterion_group!(benches, normal_forms, pipeline, oracle);
criterion_main!(benches);
