use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use cline_lab::explorer::{sweep, SweepMode, Theorem};
use cline_lab::{Budget, Execution, RingContext};

fn schedules(c: &mut Criterion) {
    let budget = Budget::default();
    let cases = [
        (
            "mat2z2/l21,l31",
            RingContext::matrix_ring(2, 2).unwrap(),
            vec![Theorem::L21, Theorem::L31],
            SweepMode::Exhaustive,
        ),
        ("mat2z2/all", RingContext::matrix_ring(2, 2).unwrap(), Theorem::ALL.to_vec(), SweepMode::Exhaustive),
        (
            "mat3z2/sample",
            RingContext::matrix_ring(2, 3).unwrap(),
            vec![Theorem::L31],
            SweepMode::Sample { seed: 1, count: 2000 },
        ),
    ];
    let mut group = c.benchmark_group("sweep");
    group.sample_size(10);
    for (name, ctx, theorems, mode) in &cases {
        for exec in [Execution::Sequential, Execution::Parallel] {
            group.bench_with_input(BenchmarkId::new(*name, format!("{exec:?}")), &exec, |bch, &exec| {
                bch.iter(|| sweep(*ctx, theorems, *mode, exec, &budget).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, schedules);
criterion_main!(benches);
