use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use beurling_bench::{float_span, submodule_fixture};
use beurling_core::oracle::{enumerate_monomial_subspaces, oracle_verdicts};
use beurling_core::subspace::series_and_decomposition;
use beurling_core::{beurling_verdict, make_space, presets, SpaceKind, Tolerances};

fn decomposition(c: &mut Criterion) {
    let tol = Tolerances::default();
    let mut group = c.benchmark_group("decomposition");
    for degree in [4, 6, 8] {
        let v = float_span(&submodule_fixture(2, degree), SpaceKind::H2Ball, 2, degree);
        group.bench_with_input(BenchmarkId::from_parameter(degree), &v, |b, v| {
            b.iter(|| series_and_decomposition(black_box(v), &tol))
        });
    }
    group.finish();
}

fn verdict(c: &mut Criterion) {
    let tol = Tolerances::default();
    let mut group = c.benchmark_group("beurling_verdict");
    group.sample_size(20);
    for degree in [4, 6] {
        let v = float_span(&submodule_fixture(2, degree), SpaceKind::H2Polydisk, 2, degree);
        group.bench_with_input(BenchmarkId::new("float", degree), &v, |b, v| b.iter(|| beurling_verdict(black_box(v), &tol)));
    }
    let space = make_space(SpaceKind::H2Polydisk, 2, 4).expect("valid space");
    let gens = presets::ex_11_1(4);
    group.bench_function("exact/ex_11_1", |b| b.iter(|| oracle_verdicts(black_box(&space), &gens)));
    group.finish();
}

fn enumeration(c: &mut Criterion) {
    let tol = Tolerances::default();
    let mut group = c.benchmark_group("monomial_enumeration");
    group.sample_size(10);
    group.bench_function("n2_d2", |b| b.iter(|| enumerate_monomial_subspaces(2, 2, &tol)));
    group.finish();
}

criterion_group!(benches, decomposition, verdict, enumeration);
criterion_main!(benches);
