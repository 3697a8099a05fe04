use criterion::{criterion_group, criterion_main, Criterion};

use compliance_core::experiments::presets::grid_errors;
use compliance_core::experiments::{
    pih_scenario, run_batch, Execution, GridMatrix, PegDiameter, ScenarioConfig,
};

fn configs() -> Vec<ScenarioConfig> {
    grid_errors()
        .into_iter()
        .enumerate()
        .map(|(i, e)| {
            let mut cfg =
                pih_scenario(PegDiameter::D30, GridMatrix::Proposed, e, i as u64).expect("preset");
            cfg.duration = 2.0;
            cfg.decimation = 0;
            cfg
        })
        .collect()
}

fn bench_batch(c: &mut Criterion) {
    let cfgs = configs();
    let mut group = c.benchmark_group("grid_batch");
    group.sample_size(10);
    group.bench_function("sequential", |b| {
        b.iter(|| run_batch(&cfgs, Execution::Sequential).expect("runs"))
    });
    group.bench_function("parallel", |b| {
        b.iter(|| run_batch(&cfgs, Execution::Parallel { jobs: 0 }).expect("runs"))
    });
    group.finish();
}

criterion_group!(benches, bench_batch);
criterion_main!(benches);
