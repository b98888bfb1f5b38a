use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use equichain::gf2::Solver;
use equichain_bench::random_matrix;

fn rank(c: &mut Criterion) {
    let mut group = c.benchmark_group("rank");
    for n in [64, 256, 512] {
        let m = random_matrix(n as u64, n, n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| b.iter(|| black_box(m).rank()));
    }
    group.finish();
}

fn solve(c: &mut Criterion) {
    let m = random_matrix(7, 256, 256);
    let solver = Solver::new(&m);
    // A consistent right-hand side, so every pivot row is used.
    let rhs = m.mul_vec(random_matrix(8, 1, 256).row(0));
    c.bench_function("solve/256", |b| b.iter(|| solver.solve(black_box(&rhs))));
}

fn product(c: &mut Criterion) {
    let (a, b) = (random_matrix(1, 256, 256), random_matrix(2, 256, 256));
    c.bench_function("mul/256", |bench| bench.iter(|| black_box(&a).mul(black_box(&b))));
}

criterion_group!(benches, rank, solve, product);
criterion_main!(benches);
