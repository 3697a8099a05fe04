use serde::{Deserialize, Serialize};

use super::batch::{run_batch, Execution};
use super::report::{ExperimentReport, RunRecord};
use super::scenario::ScenarioConfig;
use crate::admittance::AdmittanceParams;
use crate::contact::PegHoleGeometry;
use crate::error::Result;
use crate::stiffness::{
    design_task_nondiagonal, presets, StiffnessMatrix, TaskDesignSpec, DEFAULT_DIAGONAL,
};

/// Largest lateral error the proposed matrix is designed for [m].
pub const GRID_DELTA_SET: f64 = 0.005;
pub const GRID_REPETITIONS: usize = 5;
pub const GRID_JITTER: f64 = 0.0002;
/// Centre-of-pressure distance assumed by the proposed design, as a
/// fraction of the peg radius.
pub const GRID_L_SET_RATIO: f64 = 0.35;
/// Friction coefficient used for the insertion grids.
pub const GRID_MU: f64 = 0.2;
/// Rotational stiffness of the position-only baseline [N·m/rad].
pub const RCC_ROTATIONAL_STIFFNESS: f64 = 1000.0;
/// Lateral distance of the press scenarios from any hole [m].
pub const INDUCTION_STANDOFF: f64 = 0.5;
pub const INDUCTION_DURATION: f64 = 6.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum InductionKind {
    Symmetric,
    Asymmetric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PegDiameter {
    D20,
    D30,
}

impl PegDiameter {
    pub fn geometry(self) -> PegHoleGeometry {
        match self {
            PegDiameter::D20 => PegHoleGeometry::peg_20mm(),
            PegDiameter::D30 => PegHoleGeometry::peg_30mm(),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            PegDiameter::D20 => "20mm",
            PegDiameter::D30 => "30mm",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GridMatrix {
    /// Moment-to-position coupling from the task design.
    Proposed,
    /// Diagonal stiffness that only yields in position.
    Rcc,
}

impl GridMatrix {
    pub fn label(self) -> &'static str {
        match self {
            GridMatrix::Proposed => "proposed",
            GridMatrix::Rcc => "rcc",
        }
    }
}

/// Press scenario on a flat plate, far from the hole, with friction `mu`.
pub fn induction_scenario(k: StiffnessMatrix, mu: f64) -> ScenarioConfig {
    let mut geometry = PegHoleGeometry::peg_20mm();
    geometry.mu = mu;
    let mut cfg = ScenarioConfig::new(geometry, AdmittanceParams::table(k));
    cfg.initial_error = [0.0, INDUCTION_STANDOFF];
    cfg.descent.press_depth = presets::PRESS_DEPTH;
    cfg.duration = INDUCTION_DURATION;
    cfg.timeout = INDUCTION_DURATION;
    cfg.stop_on_success = false;
    cfg
}

/// Steady lateral displacement of each induction matrix pressed into a plate.
pub fn preset_induction_sweep(
    kind: InductionKind,
    mu: f64,
    exec: Execution,
) -> Result<ExperimentReport> {
    let (name, matrices) = match kind {
        InductionKind::Asymmetric => ("induction-asym", presets::asymmetric()),
        InductionKind::Symmetric => ("induction-sym", presets::symmetric()),
    };
    let configs: Vec<ScenarioConfig> = matrices
        .iter()
        .map(|(_, _, k)| {
            let mut cfg = induction_scenario(*k, mu);
            cfg.decimation = 0;
            cfg
        })
        .collect();
    let outputs = run_batch(&configs, exec)?;
    let runs = matrices
        .iter()
        .zip(&outputs)
        .map(|((label, design, _), (_, s))| {
            RunRecord::from_summary(label, [0.0, 0.0], 0, 0, Some(*design), s)
        })
        .collect();
    Ok(ExperimentReport::new(name, runs))
}

/// Stiffness used by the insertion grid for the given peg.
pub fn grid_stiffness(diameter: PegDiameter, matrix: GridMatrix) -> Result<StiffnessMatrix> {
    let geometry = diameter.geometry();
    match matrix {
        GridMatrix::Proposed => {
            let mut spec =
                TaskDesignSpec::for_peg_radius(GRID_DELTA_SET, geometry.r, presets::PRESS_DEPTH);
            spec.l_set = GRID_L_SET_RATIO * geometry.r;
            design_task_nondiagonal(&spec)
        }
        GridMatrix::Rcc => {
            let mut d = DEFAULT_DIAGONAL;
            for i in 3..6 {
                d[i] = RCC_ROTATIONAL_STIFFNESS;
            }
            StiffnessMatrix::diagonal(&d)
        }
    }
}

/// Nominal grid: the origin, ±5 mm along each axis and the four diagonals.
pub fn grid_errors() -> Vec<[f64; 2]> {
    let e = GRID_DELTA_SET;
    let mut cells = vec![[0.0, 0.0]];
    cells.extend([[e, 0.0], [-e, 0.0], [0.0, e], [0.0, -e]]);
    cells.extend([[e, e], [e, -e], [-e, e], [-e, -e]]);
    cells
}

pub fn pih_scenario(
    diameter: PegDiameter,
    matrix: GridMatrix,
    error: [f64; 2],
    seed: u64,
) -> Result<ScenarioConfig> {
    let mut geometry = diameter.geometry();
    geometry.mu = GRID_MU;
    let k = grid_stiffness(diameter, matrix)?;
    let mut cfg = ScenarioConfig::new(geometry, AdmittanceParams::table(k));
    cfg.initial_error = error;
    cfg.jitter = GRID_JITTER;
    cfg.seed = seed;
    cfg.descent.press_depth = presets::PRESS_DEPTH;
    Ok(cfg)
}

/// Seed of repetition `rep` in cell `cell` derived from `base_seed`.
pub fn run_seed(base_seed: u64, cell: usize, rep: usize) -> u64 {
    base_seed
        .wrapping_mul(1_000_003)
        .wrapping_add((cell * 1000 + rep) as u64)
}

/// Runs `repetitions` jittered insertions in every grid cell.
pub fn preset_pih_grid(
    diameter: PegDiameter,
    matrix: GridMatrix,
    repetitions: usize,
    base_seed: u64,
    exec: Execution,
) -> Result<ExperimentReport> {
    let cells = grid_errors();
    let mut configs = Vec::new();
    let mut keys = Vec::new();
    for (ci, cell) in cells.iter().enumerate() {
        for rep in 0..repetitions {
            let seed = run_seed(base_seed, ci, rep);
            let mut cfg = pih_scenario(diameter, matrix, *cell, seed)?;
            cfg.decimation = 0;
            configs.push(cfg);
            keys.push((*cell, rep, seed));
        }
    }
    let outputs = run_batch(&configs, exec)?;
    let label = matrix.label();
    let runs = keys
        .iter()
        .zip(&outputs)
        .map(|((cell, rep, seed), (_, s))| {
            RunRecord::from_summary(label, *cell, *rep, *seed, None, s)
        })
        .collect();
    let name = format!("pih-grid-{}-{}", diameter.label(), label);
    Ok(ExperimentReport::new(&name, runs))
}
