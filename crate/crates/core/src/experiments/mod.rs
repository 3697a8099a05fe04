//! Closed-loop scenarios and the experiment presets built on them.

pub mod batch;
pub mod presets;
pub mod report;
pub mod scenario;

pub use batch::{run_batch, Execution, RunOutput};
pub use presets::{
    grid_errors, grid_stiffness, induction_scenario, pih_scenario, preset_induction_sweep,
    preset_pih_grid, GridMatrix, InductionKind, PegDiameter,
};
pub use report::{CellSummary, ExperimentReport, RunRecord};
pub use scenario::{
    run_scenario, Descent, LogRow, RunStatus, RunSummary, ScenarioConfig, TrajectoryLog,
};
