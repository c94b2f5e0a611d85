use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use lagrep_core::classification::{check_theorem, SampleConfig, Theorem};
use lagrep_core::Execution;

fn sweeps(c: &mut Criterion) {
    let mut group = c.benchmark_group("theorem_sweeps");
    group.sample_size(10);
    for theorem in [Theorem::Torus, Theorem::Sphere, Theorem::Concentrated] {
        for execution in [Execution::Serial, Execution::Parallel] {
            let cfg = SampleConfig::new(42, 200).with_execution(execution);
            group.bench_with_input(
                BenchmarkId::new(theorem.to_string(), format!("{execution:?}")),
                &cfg,
                |b, cfg| b.iter(|| check_theorem(theorem, cfg).unwrap()),
            );
        }
    }
    group.finish();
}

criterion_group!(benches, sweeps);
criterion_main!(benches);
