use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};

use spinring::basis::enumerate_sector;
use spinring::eigen::{full_spectrum, ground_space, DEFAULT_DEGENERACY_TOL};
use spinring::hamiltonian::build;
use spinring::observables::{Distance, ThermalTable};
use spinring::scan::{threshold_from_table, ThresholdOptions};

fn bench_basis(c: &mut Criterion) {
    c.bench_function("enumerate_sector L=20 n=10", |b| {
        b.iter(|| enumerate_sector(black_box(20), black_box(10)).unwrap())
    });
}

fn bench_hamiltonian(c: &mut Criterion) {
    let sector = Arc::new(enumerate_sector(12, 6).unwrap());
    c.bench_function("build L=12 half-filled", |b| {
        b.iter(|| build(black_box(12), black_box(0.5), sector.clone()).unwrap())
    });

    let h = build(12, 0.5, sector).unwrap();
    let v = vec![1.0 / (h.dim() as f64).sqrt(); h.dim()];
    c.bench_function("matvec dim=924", |b| b.iter(|| h.apply(black_box(&v)).unwrap()));
}

fn bench_eigen(c: &mut Criterion) {
    let sector = Arc::new(enumerate_sector(12, 6).unwrap());
    let h = build(12, 0.3, sector).unwrap();
    let mut group = c.benchmark_group("eigen");
    group.sample_size(10);
    group.bench_function("ground_space dim=924 (iterative)", |b| {
        b.iter(|| ground_space(&h, DEFAULT_DEGENERACY_TOL).unwrap())
    });
    group.bench_function("full_spectrum L=10 with vectors", |b| {
        b.iter(|| full_spectrum(black_box(10), black_box(0.5), true).unwrap())
    });
    group.finish();
}

fn bench_thermal(c: &mut Criterion) {
    let table = ThermalTable::build(10, 0.5).unwrap();
    c.bench_function("thermal gzz L=10", |b| {
        b.iter(|| table.gzz(black_box(1.0), Distance::Nearest).unwrap())
    });
    let mut group = c.benchmark_group("threshold");
    group.sample_size(10);
    group.bench_function("threshold_from_table L=10", |b| {
        b.iter(|| {
            threshold_from_table(&table, Distance::Nearest, &ThresholdOptions::default()).unwrap()
        })
    });
    group.finish();
}

criterion_group!(benches, bench_basis, bench_hamiltonian, bench_eigen, bench_thermal);
criterion_main!(benches);
