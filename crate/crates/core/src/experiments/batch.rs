use serde::{Deserialize, Serialize};

use super::scenario::{run_scenario, RunSummary, ScenarioConfig, TrajectoryLog};
use crate::error::Result;

/// How a batch of independent scenarios is executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Execution {
    Sequential,
    /// Worker-pool execution; `jobs == 0` uses every available core.
    /// Without the `parallel` feature this runs sequentially.
    Parallel {
        jobs: usize,
    },
}

impl Default for Execution {
    fn default() -> Self {
        Execution::Parallel { jobs: 0 }
    }
}

pub type RunOutput = (TrajectoryLog, RunSummary);

/// Runs every config and returns outputs in input order.
pub fn run_batch(configs: &[ScenarioConfig], exec: Execution) -> Result<Vec<RunOutput>> {
    match exec {
        Execution::Sequential => configs.iter().map(run_scenario).collect(),
        Execution::Parallel { jobs } => run_parallel(configs, jobs),
    }
}

#[cfg(feature = "parallel")]
fn run_parallel(configs: &[ScenarioConfig], jobs: usize) -> Result<Vec<RunOutput>> {
    use rayon::prelude::*;

    let work = || {
        configs
            .par_iter()
            .map(run_scenario)
            .collect::<Result<Vec<_>>>()
    };
    if jobs == 0 {
        return work();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(work),
        Err(_) => work(),
    }
}

#[cfg(not(feature = "parallel"))]
fn run_parallel(configs: &[ScenarioConfig], _jobs: usize) -> Result<Vec<RunOutput>> {
    configs.iter().map(run_scenario).collect()
}
