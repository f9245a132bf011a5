use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use cosimplex_core::kan_tot::{cosimplicial_standard, left_kan_extend};

fn bench(c: &mut Criterion) {
    let mut g = c.benchmark_group("left kan extension of the standard simplex");
    g.sample_size(10);
    for n in [2, 3] {
        let x = cosimplicial_standard(2, 2).unwrap();
        g.bench_with_input(BenchmarkId::new("arity", n), &x, |b, x| b.iter(|| left_kan_extend(x, n).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
