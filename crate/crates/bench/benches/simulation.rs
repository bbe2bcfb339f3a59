use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

use leadsim_core::experiments::{sweep, Axis, SweepOptions};
use leadsim_core::{fitness, run, Action, RunConfig, World};

fn bench_fitness(c: &mut Criterion) {
    let actions: Vec<Action> = Action::all().collect();
    c.bench_function("fitness/all_729", |b| {
        b.iter(|| actions.iter().map(|a| fitness(black_box(a))).sum::<f64>())
    });
}

fn bench_step(c: &mut Criterion) {
    let mut group = c.benchmark_group("step");
    for (label, p) in [("quiet", 0.02), ("busy", 0.5)] {
        let cfg = RunConfig {
            broadcast_enabled: true,
            leader_p_invent: p,
            follower_p_invent: p,
            ..RunConfig::default()
        };
        let mut warmed = World::new(&cfg).unwrap();
        for _ in 0..20 {
            warmed.step();
        }
        group.bench_function(label, |b| {
            b.iter_batched(
                || warmed.clone(),
                |mut w| {
                    w.step();
                    w
                },
                BatchSize::SmallInput,
            )
        });
    }
    group.finish();
}

fn bench_run(c: &mut Criterion) {
    let cfg = RunConfig {
        broadcast_enabled: true,
        ..RunConfig::default()
    };
    c.bench_function("run/default_100_iterations", |b| {
        b.iter(|| run(black_box(&cfg)).unwrap())
    });
}

fn bench_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweep");
    group.sample_size(10);
    let axes = [Axis::new("leader_p_invent", &[0.0, 0.5, 1.0])];
    let options = SweepOptions {
        threads: Some(1),
        ..SweepOptions::default()
    };
    group.bench_function("3_cells_x_4_replicates", |b| {
        b.iter(|| sweep(&RunConfig::default(), &axes, 4, 0, &options).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_fitness, bench_step, bench_run, bench_sweep);
criterion_main!(benches);
