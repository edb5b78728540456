use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use netstrings::experiments::fit_linear;
use netstrings::generators::generate;
use netstrings::metrics::separation_number;
use netstrings::{Engine, GeneratorConfig, StringCounter};
use netstrings_bench::{scale_free, small_world};

fn engines(c: &mut Criterion) {
    let g = scale_free(2.5);
    let mut group = c.benchmark_group("count_strings/sf-2.5");
    group.sample_size(10);
    for n in [4, 5, 6] {
        for (name, engine) in [("pruned", Engine::Pruned), ("batched", Engine::BatchedTail)] {
            let counter = StringCounter::new().with_engine(engine);
            group.bench_with_input(BenchmarkId::new(name, n), &n, |b, &n| {
                b.iter(|| counter.count(black_box(&g), n).unwrap())
            });
        }
    }
    group.finish();
}

fn spectra(c: &mut Criterion) {
    let mut group = c.benchmark_group("spectrum-7");
    group.sample_size(10);
    for (name, g) in [("sf-3.0", scale_free(3.0)), ("nw-0.4", small_world(0.4))] {
        group.bench_function(name, |b| {
            b.iter(|| StringCounter::new().spectrum(black_box(&g), 7).unwrap())
        });
    }
    group.finish();
}

fn pipeline(c: &mut Criterion) {
    c.bench_function("generate/sf-2.0", |b| {
        b.iter(|| generate(black_box(&GeneratorConfig::scale_free(200, 2.0, 2, 7))).unwrap())
    });
    let g = scale_free(2.25);
    c.bench_function("separation/sf-2.25", |b| {
        b.iter(|| separation_number(black_box(&g), 7).unwrap())
    });
    let points: Vec<(f64, f64)> = (0..1000)
        .map(|i| (i as f64, 0.5 * i as f64 + (i % 7) as f64))
        .collect();
    c.bench_function("fit_linear/1000", |b| {
        b.iter(|| fit_linear(black_box(&points)).unwrap())
    });
}

criterion_group!(benches, engines, spectra, pipeline);
criterion_main!(benches);
