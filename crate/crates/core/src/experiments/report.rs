use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::scenario::{RunStatus, RunSummary};

/// One scenario run inside an experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    /// Matrix or cell label the run belongs to.
    pub label: String,
    /// Nominal lateral error of the cell [m].
    pub cell: [f64; 2],
    pub repetition: usize,
    pub seed: u64,
    pub status: RunStatus,
    pub insertion_time: Option<f64>,
    pub max_wrench: f64,
    /// Settled lateral displacement `(ΔX_x, ΔX_y)` [m].
    pub lateral: [f64; 2],
    /// Design value the run is compared against, when there is one [m].
    pub design: Option<f64>,
}

impl RunRecord {
    pub fn from_summary(
        label: &str,
        cell: [f64; 2],
        repetition: usize,
        seed: u64,
        design: Option<f64>,
        s: &RunSummary,
    ) -> Self {
        RunRecord {
            label: label.to_string(),
            cell,
            repetition,
            seed,
            status: s.status,
            insertion_time: s.insertion_time,
            max_wrench: s.max_wrench,
            lateral: [s.settled_dx[0], s.settled_dx[1]],
            design,
        }
    }

    pub fn succeeded(&self) -> bool {
        self.status == RunStatus::Success
    }
}

/// Aggregate over the runs sharing a label and cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellSummary {
    pub label: String,
    pub cell: [f64; 2],
    pub runs: usize,
    pub successes: usize,
    pub diverged: usize,
    /// Mean and population standard deviation of successful insertion times.
    pub mean_time: Option<f64>,
    pub std_time: Option<f64>,
    pub mean_lateral: [f64; 2],
    pub design: Option<f64>,
}

impl CellSummary {
    pub fn error_norm(&self) -> f64 {
        self.cell[0].hypot(self.cell[1])
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub name: String,
    pub runs: Vec<RunRecord>,
    pub cells: Vec<CellSummary>,
}

fn record_order(a: &RunRecord, b: &RunRecord) -> Ordering {
    let design = |r: &RunRecord| r.design.unwrap_or(f64::NEG_INFINITY);
    design(a)
        .total_cmp(&design(b))
        .then(a.label.cmp(&b.label))
        .then(a.cell[0].total_cmp(&b.cell[0]))
        .then(a.cell[1].total_cmp(&b.cell[1]))
        .then(a.repetition.cmp(&b.repetition))
        .then(a.seed.cmp(&b.seed))
}

impl ExperimentReport {
    /// Sorts the runs and rebuilds the cell aggregates, so the result does
    /// not depend on the order the runs finished in.
    pub fn new(name: &str, mut runs: Vec<RunRecord>) -> Self {
        runs.sort_by(record_order);
        let mut cells: Vec<CellSummary> = Vec::new();
        let mut start = 0;
        while start < runs.len() {
            let head = &runs[start];
            let end = runs[start..]
                .iter()
                .position(|r| r.label != head.label || r.cell != head.cell)
                .map_or(runs.len(), |p| start + p);
            cells.push(aggregate(&runs[start..end]));
            start = end;
        }
        ExperimentReport {
            name: name.to_string(),
            runs,
            cells,
        }
    }

    pub fn cell(&self, label: &str, cell: [f64; 2]) -> Option<&CellSummary> {
        self.cells.iter().find(|c| {
            c.label == label
                && (c.cell[0] - cell[0]).abs() < 1e-12
                && (c.cell[1] - cell[1]).abs() < 1e-12
        })
    }

    pub fn by_label(&self, label: &str) -> Option<&CellSummary> {
        self.cells.iter().find(|c| c.label == label)
    }

    /// Cells where every run succeeded.
    pub fn fully_successful_cells(&self) -> usize {
        self.cells
            .iter()
            .filter(|c| c.runs > 0 && c.successes == c.runs)
            .count()
    }
}

fn aggregate(runs: &[RunRecord]) -> CellSummary {
    let head = &runs[0];
    let times: Vec<f64> = runs
        .iter()
        .filter(|r| r.succeeded())
        .filter_map(|r| r.insertion_time)
        .collect();
    let (mean_time, std_time) = if times.is_empty() {
        (None, None)
    } else {
        let n = times.len() as f64;
        let mean = times.iter().sum::<f64>() / n;
        let var = times.iter().map(|t| (t - mean).powi(2)).sum::<f64>() / n;
        (Some(mean), Some(var.sqrt()))
    };
    let n = runs.len() as f64;
    let mean_lateral = [
        runs.iter().map(|r| r.lateral[0]).sum::<f64>() / n,
        runs.iter().map(|r| r.lateral[1]).sum::<f64>() / n,
    ];
    CellSummary {
        label: head.label.clone(),
        cell: head.cell,
        runs: runs.len(),
        successes: runs.iter().filter(|r| r.succeeded()).count(),
        diverged: runs
            .iter()
            .filter(|r| r.status == RunStatus::Diverged)
            .count(),
        mean_time,
        std_time,
        mean_lateral,
        design: head.design,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(label: &str, cell: [f64; 2], rep: usize, t: Option<f64>) -> RunRecord {
        RunRecord {
            label: label.into(),
            cell,
            repetition: rep,
            seed: rep as u64,
            status: if t.is_some() {
                RunStatus::Success
            } else {
                RunStatus::Completed
            },
            insertion_time: t,
            max_wrench: 1.0,
            lateral: [0.0, rep as f64],
            design: None,
        }
    }

    #[test]
    fn aggregation_is_order_independent() {
        let runs = vec![
            rec("a", [0.0, 0.0], 0, Some(1.0)),
            rec("a", [0.0, 0.0], 1, Some(3.0)),
            rec("a", [0.005, 0.0], 0, None),
            rec("b", [0.0, 0.0], 0, Some(2.0)),
        ];
        let mut shuffled = runs.clone();
        shuffled.reverse();
        let a = ExperimentReport::new("x", runs);
        let b = ExperimentReport::new("x", shuffled);
        assert_eq!(a, b);
        assert_eq!(a.cells.len(), 3);
        let c = a.cell("a", [0.0, 0.0]).unwrap();
        assert_eq!(c.successes, 2);
        assert_eq!(c.mean_time, Some(2.0));
        assert_eq!(c.std_time, Some(1.0));
        assert_eq!(c.mean_lateral, [0.0, 0.5]);
        assert_eq!(a.fully_successful_cells(), 2);
    }
}
