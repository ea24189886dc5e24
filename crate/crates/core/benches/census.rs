use std::hint::black_box;

use blc_census::asymptotics::{constants, convergence_series};
use blc_census::typing::count_typable;
use blc_census::{CountTable, FreeBound, Strategy};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn strategies() -> [(&'static str, Strategy); 2] {
    [("sequential", Strategy::Sequential), ("parallel", Strategy::Parallel { jobs: 0 })]
}

fn table_build(c: &mut Criterion) {
    let mut group = c.benchmark_group("table_build");
    group.sample_size(10);
    for n in [200, 400] {
        for (name, s) in strategies() {
            group.bench_with_input(BenchmarkId::new(name, n), &n, |b, &n| {
                b.iter(|| CountTable::with_strategy(black_box(n), s))
            });
        }
    }
    group.finish();
}

fn typable_census(c: &mut Criterion) {
    let table = CountTable::new(22);
    let mut group = c.benchmark_group("count_typable");
    group.sample_size(10);
    for (name, s) in strategies() {
        group.bench_function(BenchmarkId::new(name, 22), |b| {
            b.iter(|| count_typable(&table, black_box(22), false, s))
        });
    }
    group.finish();
}

fn convergence(c: &mut Criterion) {
    let table = CountTable::new(600);
    let rho = constants(1e-12).rho;
    let bounds: Vec<FreeBound> = (0..=10).map(FreeBound::AtMost).chain([FreeBound::Unbounded]).collect();
    let mut group = c.benchmark_group("convergence_series");
    for (name, s) in strategies() {
        group.bench_function(BenchmarkId::new(name, 600), |b| {
            b.iter(|| convergence_series(&table, black_box(&bounds), 600, &rho, s))
        });
    }
    group.finish();
}

criterion_group!(benches, table_build, typable_census, convergence);
criterion_main!(benches);
