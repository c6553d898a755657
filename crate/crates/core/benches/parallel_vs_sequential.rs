use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use loophh::comparison::{build_transformation, LoopSetting};
use loophh::par;
use loophh::ring::Ring;
use loophh::simplicial::{SSet, DEFAULT_CEILING};
use loophh::surjection::verify_box;

fn operad_box(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify_box(4,3)");
    g.sample_size(10);
    g.bench_function(BenchmarkId::new("parallel", par::is_parallel()), |b| b.iter(|| verify_box(4, 3)));
    g.bench_function("sequential", |b| b.iter(|| par::sequential(|| verify_box(4, 3))));
    g.finish();
}

fn transformation(c: &mut Criterion) {
    let s = LoopSetting::new(&SSet::sphere(2).unwrap(), Ring::Prime(2), 2, Some(6), DEFAULT_CEILING).unwrap();
    let mut g = c.benchmark_group("transformation S² f2");
    g.sample_size(10);
    g.bench_function(BenchmarkId::new("parallel", par::is_parallel()), |b| b.iter(|| build_transformation(&s, 2).unwrap()));
    g.bench_function("sequential", |b| b.iter(|| par::sequential(|| build_transformation(&s, 2).unwrap())));
    g.finish();
}

criterion_group!(benches, operad_box, transformation);
criterion_main!(benches);
