use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use cosimplex_core::diagrams::nerve;
use cosimplex_core::diagrams::shapes::diagonal_overcategory;
use cosimplex_core::sset::betti;

fn bench(c: &mut Criterion) {
    let mut g = c.benchmark_group("nerve betti numbers");
    for p in [vec![1, 1], vec![2, 1], vec![2, 2]] {
        let (cat, _) = diagonal_overcategory(&p, 2);
        g.bench_with_input(BenchmarkId::from_parameter(format!("{p:?}")), &cat, |b, cat| b.iter(|| betti(&nerve(cat, 3))));
    }
    g.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
