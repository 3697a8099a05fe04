use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use compliance_core::experiments::GridMatrix;

use crate::manifest::Preset;

#[derive(Debug, Parser)]
#[command(
    name = "compliance",
    version,
    about = "Stiffness design, admittance simulation and peg-in-hole experiments"
)]
pub struct Cli {
    /// TOML config, or a manifest.toml from an earlier run.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true, default_value = "out")]
    pub out: PathBuf,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads for experiments; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Keep every n-th sample of the simulated trajectory.
    #[arg(long, global = true)]
    pub decimate: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Design a stiffness matrix that turns search moments into lateral motion.
    Design(DesignArgs),
    /// Classify a matrix file and test its stability condition.
    Check { file: PathBuf },
    /// Run one closed-loop scenario from the config.
    Sim,
    /// Run a named experiment preset.
    Experiment(ExperimentArgs),
}

#[derive(Debug, Args)]
pub struct DesignArgs {
    /// Largest expected lateral error [m].
    #[arg(long, default_value_t = 0.005, allow_negative_numbers = true)]
    pub delta_set: f64,
    /// Centre-of-pressure distance at that error [m].
    #[arg(long, default_value_t = 0.01, allow_negative_numbers = true)]
    pub l_set: f64,
    /// Depth of the position command below the surface [m].
    #[arg(long, default_value_t = 0.02, allow_negative_numbers = true)]
    pub delta_l: f64,
    /// Diagonal stiffness, six comma separated values.
    #[arg(long, value_delimiter = ',', num_args = 6, allow_negative_numbers = true,
          default_values_t = [500.0, 500.0, 500.0, 50.0, 50.0, 50.0])]
    pub k_diag: Vec<f64>,
    /// Overrides the z entry of the diagonal.
    #[arg(long, allow_negative_numbers = true)]
    pub k_zz: Option<f64>,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub mu_assumed: f64,
    /// Force error used for the printed hunting width [N].
    #[arg(long, default_value_t = 0.5)]
    pub force_error: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MatrixArg {
    Proposed,
    Rcc,
}

impl From<MatrixArg> for GridMatrix {
    fn from(m: MatrixArg) -> Self {
        match m {
            MatrixArg::Proposed => GridMatrix::Proposed,
            MatrixArg::Rcc => GridMatrix::Rcc,
        }
    }
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    /// Optional when `--config` points at an experiment manifest.
    pub preset: Option<Preset>,
    /// Stiffness used by the grid presets.
    #[arg(long, value_enum, default_value_t = MatrixArg::Proposed)]
    pub matrix: MatrixArg,
    /// Repetitions per grid cell.
    #[arg(long, default_value_t = 5)]
    pub reps: usize,
    /// Friction coefficient for the induction presets.
    #[arg(long)]
    pub mu: Option<f64>,
}
