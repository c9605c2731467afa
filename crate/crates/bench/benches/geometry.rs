use criterion::{criterion_group, criterion_main, Criterion};
use kstab_core::stability::{beta, beta_via_barycentre, search_destabilizer};
use kstab_core::toric::{fixtures, ToricValuation};
use std::hint::black_box;

fn betas(c: &mut Criterion) {
    let p3 = fixtures::projective_three_space();
    let blowup = fixtures::blown_up_product_of_lines();
    let diag = ToricValuation::new(vec![1, 1, 1]).unwrap();
    let corner = ToricValuation::new(vec![-1, -1]).unwrap();
    c.bench_function("beta slab P3 (1,1,1)", |b| {
        b.iter(|| beta(&p3, &p3.anticanonical(), black_box(&diag)).unwrap())
    });
    c.bench_function("beta barycentre P3 (1,1,1)", |b| {
        b.iter(|| beta_via_barycentre(&p3, &p3.anticanonical(), black_box(&diag)).unwrap())
    });
    c.bench_function("beta slab blow-up (-1,-1)", |b| {
        b.iter(|| beta(&blowup, &blowup.anticanonical(), black_box(&corner)).unwrap())
    });
}

fn search(c: &mut Criterion) {
    let x = fixtures::product_of_lines();
    let mut g = c.benchmark_group("search");
    g.sample_size(10);
    g.bench_function("P1xP1 radius 2", |b| b.iter(|| search_destabilizer(&x, black_box(2)).unwrap()));
    g.finish();
}

criterion_group!(benches, betas, search);
criterion_main!(benches);
