use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ggmorse_core::annex::{lattice_sum_monomial, whitney_verify, WeightSpec, WeightedSplitBundle};
use ggmorse_core::{bounds_report, compute_b, morse_polynomial, positivity_threshold, JetParams};
use std::hint::black_box;

fn morse(c: &mut Criterion) {
    let mut g = c.benchmark_group("morse_polynomial");
    for n in 2..=5 {
        let params = JetParams::headline(n).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(n), &params, |b, p| {
            b.iter(|| morse_polynomial(black_box(p)).unwrap())
        });
    }
    g.finish();
}

fn coefficients(c: &mut Criterion) {
    let mut g = c.benchmark_group("compute_b");
    for n in [3usize, 6, 10] {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| compute_b(black_box(n), n).unwrap())
        });
    }
    g.finish();
}

fn thresholds(c: &mut Criterion) {
    let mut g = c.benchmark_group("positivity_threshold");
    g.sample_size(10);
    for n in [2usize, 4] {
        let mp = morse_polynomial(&JetParams::headline(n).unwrap()).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(n), &mp, |b, mp| {
            b.iter(|| positivity_threshold(black_box(mp)).unwrap())
        });
    }
    g.finish();
    c.bench_function("bounds_report/3", |b| {
        let p = JetParams::headline(3).unwrap();
        b.iter(|| bounds_report(black_box(&p)).unwrap())
    });
}

fn annex(c: &mut Criterion) {
    let bundle = WeightedSplitBundle::from_pairs(3, &[(1, 2), (-1, 3), (2, 1)]).unwrap();
    c.bench_function("whitney_verify/n3r3", |b| {
        b.iter(|| whitney_verify(black_box(&bundle)).unwrap())
    });
    let w = WeightSpec::new(vec![1, 2, 3]).unwrap();
    c.bench_function("lattice_sum_monomial/m1536", |b| {
        b.iter(|| lattice_sum_monomial(black_box(&w), &[1, 0, 0], 1536))
    });
}

criterion_group!(benches, morse, coefficients, thresholds, annex);
criterion_main!(benches);
