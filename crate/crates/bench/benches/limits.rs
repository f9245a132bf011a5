use criterion::{criterion_group, criterion_main, Criterion};
use cosimplex_core::corpus::multi_corpus;
use cosimplex_core::diagrams::limit;
use cosimplex_core::kan_tot::tot;
use cosimplex_core::sset::{product_with_projections, standard_simplex};
use std::hint::black_box;

fn bench(c: &mut Criterion) {
    let x = multi_corpus(2, 2, 2, cosimplex_core::corpus::DEFAULT_SEED).unwrap();
    let standard = &x[0].value;
    c.bench_function("limit of standard bicosimplicial diagram", |b| b.iter(|| limit(black_box(standard.diagram())).unwrap()));
    c.bench_function("tot of standard bicosimplicial", |b| b.iter(|| tot(black_box(standard), 400_000).unwrap()));
    let s = standard_simplex(2, 3);
    c.bench_function("product of three 2-simplices", |b| b.iter(|| product_with_projections(&[&s, &s, &s]).unwrap()));
}

criterion_group!(benches, bench);
criterion_main!(benches);
