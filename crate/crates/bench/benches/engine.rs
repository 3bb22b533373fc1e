use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use folcohom::lichnerowicz::{cohomology, operator_identities, random_closed_thetas, Sign};
use folcohom::signature::{basic_signature, half_kappa};
use folcohom::zoo;

const MODELS: [&str; 4] = ["carriere_sol3", "hopf_su2", "cp2_cdga", "hopf_x_hopf"];

fn model_construction(c: &mut Criterion) {
    let mut group = c.benchmark_group("basic_subcomplex");
    for name in MODELS {
        group.bench_with_input(BenchmarkId::from_parameter(name), &name, |b, name| {
            b.iter(|| zoo::builtin(name).unwrap().model.basic_subcomplex().unwrap())
        });
    }
    group.finish();
}

fn twisted_cohomology(c: &mut Criterion) {
    let mut group = c.benchmark_group("twisted_cohomology");
    for name in MODELS {
        let b = zoo::builtin(name).unwrap().model.basic_subcomplex().unwrap();
        let mc = b.mean_curvature_data().unwrap();
        let theta = half_kappa(&b, &mc);
        group.bench_function(BenchmarkId::from_parameter(name), |bench| {
            bench.iter(|| cohomology(black_box(&b), &theta, Sign::Minus, &mc).unwrap())
        });
    }
    group.finish();
}

fn signature(c: &mut Criterion) {
    let mut group = c.benchmark_group("basic_signature");
    for name in MODELS {
        let b = zoo::builtin(name).unwrap().model.basic_subcomplex().unwrap();
        let mc = b.mean_curvature_data().unwrap();
        group.bench_function(BenchmarkId::from_parameter(name), |bench| {
            bench.iter(|| basic_signature(black_box(&b), &mc).unwrap())
        });
    }
    group.finish();
}

fn identities(c: &mut Criterion) {
    let b = zoo::builtin("hopf_x_hopf").unwrap().model.basic_subcomplex().unwrap();
    let mc = b.mean_curvature_data().unwrap();
    let theta = random_closed_thetas(&b, 1, 3).remove(0);
    c.bench_function("operator_identities/hopf_x_hopf", |bench| {
        bench.iter(|| operator_identities(black_box(&b), &mc, &theta).unwrap())
    });
}

criterion_group!(benches, model_construction, twisted_cohomology, signature, identities);
criterion_main!(benches);
