use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use phonon_sobol::design::truncation_curve_with;
use phonon_sobol::phononic::{FrequencyUnit, ObjectiveKind, PhononicObjective};
use phonon_sobol::sampling::SampleSet;
use phonon_sobol::sobol::{analytic_poly_model, sobol_indices_with, Orders};
use phonon_sobol::Execution;

const BACKENDS: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn sobol_phononic(c: &mut Criterion) {
    let mut group = c.benchmark_group("sobol_ss_n200");
    group.sample_size(10);
    let samples = SampleSet::generate(5, 200, 42).unwrap();
    let model = PhononicObjective::new(ObjectiveKind::SS, FrequencyUnit::Cyclic);
    for (name, exec) in BACKENDS {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| sobol_indices_with(&model, black_box(&samples), Orders::FirstAndSecond, exec).unwrap())
        });
    }
    group.finish();
}

fn sobol_poly(c: &mut Criterion) {
    let mut group = c.benchmark_group("sobol_poly_n3000");
    let samples = SampleSet::generate(3, 3000, 42).unwrap();
    let model = analytic_poly_model();
    for (name, exec) in BACKENDS {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| sobol_indices_with(&model, black_box(&samples), Orders::FirstAndSecond, exec).unwrap())
        });
    }
    group.finish();
}

fn truncation(c: &mut Criterion) {
    let mut group = c.benchmark_group("truncation_wp_n2000");
    group.sample_size(10);
    let samples = SampleSet::generate(5, 2000, 42).unwrap();
    for (name, exec) in BACKENDS {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| truncation_curve_with(ObjectiveKind::WP, black_box(&samples), exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, sobol_phononic, sobol_poly, truncation);
criterion_main!(benches);
