use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use klein_core::delta_complex::klein_bottle_squared;
use klein_core::twisted_cohomology::{cf_one_cochain, coboundary_matrix, cup_power4};
use klein_core::{
    finite_quotient_test, obstruction_value, reduce_full_ring, row_reduce, QuotientBudget,
    QuotientSpec,
};

fn complex(c: &mut Criterion) {
    c.bench_function("product K x K", |b| b.iter(klein_bottle_squared));
    let kk = klein_bottle_squared();
    c.bench_function("top coboundary matrix", |b| {
        b.iter(|| coboundary_matrix(black_box(&kk), 3).unwrap())
    });
    let f = cf_one_cochain(&kk);
    c.bench_function("fourth cup power", |b| {
        b.iter(|| cup_power4(black_box(&kk), black_box(&f)).unwrap())
    });
}

fn reduction(c: &mut Criterion) {
    let m = coboundary_matrix(&klein_bottle_squared(), 3).unwrap();
    c.bench_function("row reduction", |b| {
        b.iter(|| row_reduce(black_box(&m)).unwrap())
    });
}

fn certificates(c: &mut Criterion) {
    let v = obstruction_value().unwrap();
    let g = v.to_group_tensor();
    c.bench_function("orbit walk", |b| {
        b.iter(|| reduce_full_ring(black_box(g.terms()), 4, 8).unwrap())
    });
    let budget = QuotientBudget::default();
    let mut group = c.benchmark_group("finite quotient");
    group.sample_size(10);
    for (p, q, ell) in [(2, 2, 0), (2, 3, 0), (2, 4, 0)] {
        let spec = QuotientSpec::new(p, q, ell).unwrap();
        group.bench_function(format!("Q({p},{q}) ell={ell}"), |b| {
            b.iter(|| finite_quotient_test(black_box(v.terms()), 4, &spec, &budget).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, complex, reduction, certificates);
criterion_main!(benches);
