use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use symmono::linalg::{matrix_exp, NULL_SPACE_TOL};
use symmono::models::{bloch_to_state, xz_contour, BlochVector};
use symmono::monotone::lr_quadratic_form_dense;
use symmono::monotone_value;
use symmono::symmetry::{noether_basis, superop_commutant_basis};
use symmono_bench::{commutant_monotone, davies_lindbladian_monotone, generator, state};

fn propagators(c: &mut Criterion) {
    let mut group = c.benchmark_group("matrix_exp");
    for d in [2, 3, 4, 6] {
        let l = generator(d, 2);
        let m = l.superop().matrix().scale(0.7);
        group.bench_with_input(BenchmarkId::from_parameter(d), &m, |b, m| {
            b.iter(|| matrix_exp(black_box(m)))
        });
    }
    group.finish();
}

fn symmetries(c: &mut Criterion) {
    let mut group = c.benchmark_group("symmetries");
    for d in [2, 3] {
        let l = generator(d, 1);
        group.bench_with_input(BenchmarkId::new("superop_commutant", d), &l, |b, l| {
            b.iter(|| superop_commutant_basis(black_box(l), NULL_SPACE_TOL))
        });
    }
    for d in [2, 4, 6] {
        let l = generator(d, 2);
        group.bench_with_input(BenchmarkId::new("noether", d), &l, |b, l| {
            b.iter(|| noether_basis(black_box(l), NULL_SPACE_TOL))
        });
    }
    group.finish();
}

fn monotones(c: &mut Criterion) {
    let mut group = c.benchmark_group("monotone");
    for d in [2, 3] {
        let (_, spec) = commutant_monotone(d, 0.5);
        let rho = state(d);
        group.bench_with_input(
            BenchmarkId::new("spectral", d),
            &(rho.clone(), spec.clone()),
            |b, (rho, spec)| b.iter(|| monotone_value(black_box(rho), spec)),
        );
        let a = spec.m.apply(rho.matrix());
        group.bench_with_input(BenchmarkId::new("dense_oracle", d), &(a, rho), |b, (a, rho)| {
            b.iter(|| lr_quadratic_form_dense(black_box(a), rho.matrix(), rho.matrix(), 0.5))
        });
    }
    group.finish();
}

fn contours(c: &mut Criterion) {
    let (_, spec) = davies_lindbladian_monotone();
    let reference = bloch_to_state(&BlochVector::new(0.5, 0.0, -(3f64.sqrt()) / 2.0)).expect("valid Bloch vector");
    let mut group = c.benchmark_group("xz_contour");
    group.sample_size(10);
    for n in [21, 101] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| xz_contour(&spec, &reference, black_box(n)))
        });
    }
    group.finish();
}

criterion_group!(benches, propagators, symmetries, monotones, contours);
criterion_main!(benches);
