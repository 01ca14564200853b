use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use polyinv_bench::figure_eight_images;
use polyinv_core::knots::{classify, jones, project_along};
use polyinv_core::polygon::figure_eight_7;
use polyinv_core::{Point3, Tolerance};

fn classify_images(c: &mut Criterion) {
    let tol = Tolerance::default();
    let mut g = c.benchmark_group("classify");
    for (name, k) in figure_eight_images() {
        g.bench_function(name, |b| b.iter(|| classify(black_box(&k), tol).unwrap()));
    }
    g.finish();
}

fn state_sum(c: &mut Criterion) {
    let tol = Tolerance::default();
    let d = project_along(&figure_eight_7(), Point3::new(0.3, 0.2, 1.0), tol).unwrap();
    c.bench_function("jones/figure_eight_projection", |b| b.iter(|| jones(black_box(&d)).unwrap()));
}

criterion_group!(benches, classify_images, state_sum);
criterion_main!(benches);
