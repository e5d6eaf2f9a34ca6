use criterion::{black_box, criterion_group, criterion_main, Criterion};

use spinor_factor::cofactor::{find_cofactor, DEFAULT_MAX_ATTEMPTS};
use spinor_factor::factor::{factorize_all, FactorOptions};
use spinor_factor::fourbar::{self, QuadricSystem};
use spinor_factor::{find_roots, norm_poly};
use spinor_factor_bench::{element_pairs, spinor_polynomials};

fn product(c: &mut Criterion) {
    let pairs = element_pairs(64);
    c.bench_function("even_product", |b| {
        b.iter(|| {
            for (x, y) in &pairs {
                black_box(*x * *y);
            }
        })
    });
}

fn roots(c: &mut Criterion) {
    let norms: Vec<_> = spinor_polynomials(16, 3)
        .iter()
        .map(|p| norm_poly(p, 1e-9).unwrap())
        .collect();
    c.bench_function("norm_roots_degree6", |b| {
        b.iter(|| {
            for n in &norms {
                black_box(find_roots(n, 1e-10).unwrap());
            }
        })
    });
}

fn factorize(c: &mut Criterion) {
    let opts = FactorOptions::default();
    for degree in [2, 3] {
        let polys = spinor_polynomials(8, degree);
        c.bench_function(&format!("factorize_degree{degree}"), |b| {
            b.iter(|| {
                for p in &polys {
                    black_box(factorize_all(p, &opts).unwrap());
                }
            })
        });
    }
}

fn cofactor(c: &mut Criterion) {
    let polys = spinor_polynomials(4, 2);
    c.bench_function("find_cofactor_degree2", |b| {
        b.iter(|| {
            for (k, p) in polys.iter().enumerate() {
                black_box(find_cofactor(p, k as u64, DEFAULT_MAX_ATTEMPTS).unwrap());
            }
        })
    });
}

fn fourbar_pipeline(c: &mut Criterion) {
    let sys = QuadricSystem::reference();
    let mut group = c.benchmark_group("fourbar");
    group.sample_size(20);
    group.bench_function("homotopy_rulings_axes", |b| {
        b.iter(|| black_box(fourbar::run(&sys, 0, fourbar::DEFAULT_TOL).unwrap()))
    });
    group.finish();
}

criterion_group!(
    benches,
    product,
    roots,
    factorize,
    cofactor,
    fourbar_pipeline
);
criterion_main!(benches);
