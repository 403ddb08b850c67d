use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use ptorus::{
    hausdorff, membership_maskit, membership_trace, raster_maskit, Complex64, ScanParams, Window,
};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn bench_scans(cr: &mut Criterion) {
    let p = ScanParams::default();
    let mut group = cr.benchmark_group("scan");
    // deep interior: every branch prunes almost immediately
    group.bench_function("maskit_interior", |b| {
        b.iter(|| black_box(membership_maskit(black_box(c(0.3, 4.0)), &p)))
    });
    // certificate at the root fan
    group.bench_function("maskit_strip", |b| {
        b.iter(|| black_box(membership_maskit(black_box(c(0.7, 0.4)), &p)))
    });
    // near the boundary of a linear slice: slow fans
    let beta = ptorus::beta_from_lambda(c(0.1, 0.1));
    group.bench_function("linear_near_boundary", |b| {
        b.iter(|| black_box(membership_trace(black_box(c(2.2, 1.1)), beta, &p)))
    });
    group.finish();
}

fn bench_raster(cr: &mut Criterion) {
    let p = ScanParams {
        max_depth: 40,
        ..ScanParams::default()
    };
    let w = Window::square(c(0.0, 0.0), 8.0).unwrap();
    let mut group = cr.benchmark_group("raster");
    group.sample_size(10);
    group.bench_function("maskit_64x64", |b| {
        b.iter(|| black_box(raster_maskit(&w, 64, 64, &p)))
    });
    group.finish();
}

fn bench_hausdorff(cr: &mut Criterion) {
    let p = ScanParams {
        max_depth: 30,
        ..ScanParams::default()
    };
    let w = Window::square(c(0.0, 0.0), 8.0).unwrap();
    let a = raster_maskit(&w, 128, 128, &p);
    let b = {
        let mut r = a.clone();
        r.cells.rotate_left(128);
        r
    };
    cr.bench_function("hausdorff_128x128", |bch| {
        bch.iter(|| black_box(hausdorff(black_box(&a), black_box(&b)).unwrap()))
    });
}

criterion_group!(benches, bench_scans, bench_raster, bench_hausdorff);
criterion_main!(benches);
