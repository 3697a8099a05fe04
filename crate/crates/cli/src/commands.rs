use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use compliance_core::experiments::{
    preset_induction_sweep, preset_pih_grid, run_scenario, Execution, ExperimentReport, GridMatrix,
    InductionKind, PegDiameter, RunStatus, ScenarioConfig, TrajectoryLog,
};
use compliance_core::io::{
    atomic_write, parse_matrix_csv, svg_bar_chart, svg_grid_plot, svg_line_plot, write_matrix_csv,
    write_runs_csv, write_summary_csv, write_trajectory_csv, MatrixFile, Series,
};
use compliance_core::matcore::AXIS_NAMES;
use compliance_core::stiffness::{
    axis, design_task_nondiagonal, hunting_width, predicted_induction,
};
use compliance_core::{EigenStatus, Frame, StiffnessMatrix, TaskDesignSpec, Vec6, Wrench};

use crate::cli::{Cli, Command, DesignArgs, ExperimentArgs};
use crate::config::parse_config;
use crate::error::{CliError, CliResult};
use crate::manifest::{ExperimentSpec, Preset, Resolved, RunManifest, MANIFEST_NAME};

const DEFAULT_EXPERIMENT_SEED: u64 = 1;

/// Runs a parsed command line and returns the process exit code.
pub fn execute(cli: &Cli) -> CliResult<u8> {
    match &cli.command {
        Command::Design(args) => design(cli, args),
        Command::Check { file } => check(file),
        Command::Sim => sim(cli),
        Command::Experiment(args) => experiment(cli, args),
    }
}

fn write_out(dir: &Path, name: &str, contents: &str) -> CliResult<PathBuf> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let path = dir.join(name);
    atomic_write(&path, contents.as_bytes()).map_err(|e| CliError::io(&path, e))?;
    Ok(path)
}

fn fmt_vec(v: &[f64]) -> String {
    v.iter()
        .map(|x| format!("{x:.6}"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn status_label(s: EigenStatus) -> &'static str {
    match s {
        EigenStatus::AllPositive => "all eigenvalues positive",
        EigenStatus::HasZero => "zero eigenvalue",
        EigenStatus::HasNegative => "negative eigenvalue",
        EigenStatus::Unverified => "unverified (neither symmetric nor triangular)",
    }
}

fn describe(k: &StiffnessMatrix) -> Vec<String> {
    let mut lines = vec![
        format!("shape: {}", k.shape().label()),
        format!("eigen status: {}", status_label(k.eigen_status())),
    ];
    if let Some(ev) = k.eigenvalues() {
        lines.push(format!("eigenvalues: {}", fmt_vec(&ev)));
    }
    lines
}

fn design(cli: &Cli, args: &DesignArgs) -> CliResult<u8> {
    let mut k_diag = Vec6::ZERO;
    k_diag.0.copy_from_slice(&args.k_diag);
    if let Some(kzz) = args.k_zz {
        k_diag[axis::Z] = kzz;
    }
    let spec = TaskDesignSpec {
        delta_set: args.delta_set,
        l_set: args.l_set,
        delta_l: args.delta_l,
        k_diag,
        mu_assumed: args.mu_assumed,
    };
    let k = design_task_nondiagonal(&spec)?;
    let c = k.compliance()?;
    let info = describe(&k);
    let inputs = format!(
        "delta_set = {} m, l_set = {} m, delta_L = {} m, mu_assumed = {}",
        spec.delta_set, spec.l_set, spec.delta_l, spec.mu_assumed
    );

    let mut kf = MatrixFile::new(*k.matrix())
        .with_comment("stiffness K, axes x y z rx ry rz")
        .with_comment(inputs.clone());
    let mut cf = MatrixFile::new(c)
        .with_comment("compliance K^-1, axes x y z rx ry rz")
        .with_comment(inputs);
    for line in &info {
        kf = kf.with_comment(line.clone());
        cf = cf.with_comment(line.clone());
    }
    let kp = write_out(&cli.out, "stiffness.csv", &write_matrix_csv(&kf))?;
    let cp = write_out(&cli.out, "compliance.csv", &write_matrix_csv(&cf))?;

    for line in &info {
        println!("{line}");
    }
    println!(
        "k_inv[y][rx] = {}, k_inv[x][ry] = {}",
        c[(axis::Y, axis::RX)],
        c[(axis::X, axis::RY)]
    );
    let delta = predicted_induction(&k, spec.delta_l, spec.mu_assumed, spec.l_set)?;
    println!("predicted induction at l_set: {:.3} mm", delta * 1e3);
    let e = args.force_error;
    let width = hunting_width(
        &k,
        &Wrench::from_stacked(&Vec6([e, e, e, 0.0, 0.0, 0.0]), Frame::PegTip),
    )?;
    let parts: Vec<String> = AXIS_NAMES
        .iter()
        .zip(&width.0)
        .map(|(n, w)| format!("{n} {w:.3e}"))
        .collect();
    println!("hunting width for {e} N force error: {}", parts.join(", "));
    println!("wrote {} and {}", kp.display(), cp.display());
    Ok(0)
}

fn check(file: &Path) -> CliResult<u8> {
    let text = std::fs::read_to_string(file).map_err(|e| CliError::io(file, e))?;
    let parsed = parse_matrix_csv(&text)
        .map_err(|e| CliError::Config(format!("{}: {e}", file.display())))?;
    let k = StiffnessMatrix::new(parsed.matrix)?;
    for line in describe(&k) {
        println!("{line}");
    }
    let verdict = match k.eigen_status() {
        EigenStatus::AllPositive => "PASS",
        EigenStatus::Unverified => "UNVERIFIED",
        _ => "FAIL",
    };
    println!("stability condition: {verdict}");
    Ok(if k.eigen_status().is_stable() { 0 } else { 2 })
}

enum Source {
    Config(Box<ScenarioConfig>),
    Manifest(RunManifest),
}

fn load(path: &Path) -> CliResult<Source> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    if RunManifest::looks_like(&text) {
        return Ok(Source::Manifest(RunManifest::from_toml(&text)?));
    }
    let base = path.parent().unwrap_or(Path::new("."));
    Ok(Source::Config(Box::new(
        parse_config(&text)?.resolve(base)?,
    )))
}

fn execution(jobs: usize) -> Execution {
    if jobs == 1 {
        Execution::Sequential
    } else {
        Execution::Parallel { jobs }
    }
}

fn series(
    log: &TrajectoryLog,
    wrench: bool,
    range: std::ops::Range<usize>,
    scale: f64,
) -> Vec<Series<'static>> {
    let names = if wrench {
        ["fx", "fy", "fz", "tx", "ty", "tz"]
    } else {
        ["dx", "dy", "dz", "drx", "dry", "drz"]
    };
    range
        .map(|i| {
            let pts = log
                .rows
                .iter()
                .map(|r| (r.t, scale * if wrench { r.wrench[i] } else { r.dx[i] }))
                .collect();
            (names[i], pts)
        })
        .collect()
}

fn sim(cli: &Cli) -> CliResult<u8> {
    let mut cfg = match &cli.config {
        None => parse_config("")?.resolve(Path::new("."))?,
        Some(path) => match load(path)? {
            Source::Config(cfg) => *cfg,
            Source::Manifest(m) => match m.resolved {
                Resolved::Sim { scenario } => *scenario,
                Resolved::Experiment { .. } => {
                    return Err(CliError::Usage(
                        "manifest describes an experiment; use `experiment`".into(),
                    ))
                }
            },
        },
    };
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(n) = cli.decimate {
        cfg.decimation = n;
    }
    cfg.validate()?;
    let (log, s) = run_scenario(&cfg)?;

    let manifest = RunManifest::new(
        cli.config.as_deref(),
        &cli.out,
        cfg.seed,
        Resolved::Sim {
            scenario: Box::new(cfg),
        },
    );
    write_out(&cli.out, MANIFEST_NAME, &manifest.to_toml()?)?;
    write_out(&cli.out, "trajectory.csv", &write_trajectory_csv(&log))?;
    let plots = [
        (
            "displacement.svg",
            "Lateral and vertical displacement",
            "ΔX [mm]",
            false,
            0..3,
            1e3,
        ),
        (
            "rotation.svg",
            "Rotational displacement",
            "ΔX [mrad]",
            false,
            3..6,
            1e3,
        ),
        (
            "force.svg",
            "Force at the peg tip",
            "f [N]",
            true,
            0..3,
            1.0,
        ),
        (
            "moment.svg",
            "Moment at the peg tip",
            "τ [N·m]",
            true,
            3..6,
            1.0,
        ),
    ];
    for (name, title, ylabel, wrench, range, scale) in plots {
        let svg = svg_line_plot(title, "t [s]", ylabel, &series(&log, wrench, range, scale));
        write_out(&cli.out, name, &svg)?;
    }

    println!("status: {}", s.status.label());
    match s.insertion_time {
        Some(t) => println!("insertion time: {t:.3} s"),
        None => println!("insertion time: not inserted"),
    }
    if let Some(t) = s.first_contact {
        println!("first contact: {t:.3} s");
    }
    println!(
        "end time: {:.3} s, max wrench {:.3}",
        s.end_time, s.max_wrench
    );
    println!(
        "final tip: ({:.4}, {:.4}, {:.4}) m",
        s.final_tip.x(),
        s.final_tip.y(),
        s.final_tip.z()
    );
    println!("wrote {} samples to {}", log.len(), cli.out.display());
    Ok(if s.status == RunStatus::Diverged {
        2
    } else {
        0
    })
}

fn run_experiment(spec: &ExperimentSpec, exec: Execution) -> CliResult<ExperimentReport> {
    let report = match spec.preset {
        Preset::InductionAsym => {
            preset_induction_sweep(InductionKind::Asymmetric, spec.mu.unwrap_or(0.0), exec)?
        }
        Preset::InductionSym => {
            preset_induction_sweep(InductionKind::Symmetric, spec.mu.unwrap_or(0.0), exec)?
        }
        Preset::PihGrid30mm => preset_pih_grid(
            PegDiameter::D30,
            spec.matrix,
            spec.repetitions,
            spec.base_seed,
            exec,
        )?,
        Preset::PihGrid20mm => preset_pih_grid(
            PegDiameter::D20,
            spec.matrix,
            spec.repetitions,
            spec.base_seed,
            exec,
        )?,
    };
    Ok(report)
}

fn experiment(cli: &Cli, args: &ExperimentArgs) -> CliResult<u8> {
    let from_manifest = match &cli.config {
        Some(path) => match load(path)? {
            Source::Manifest(RunManifest {
                resolved: Resolved::Experiment { spec },
                ..
            }) => Some(spec),
            _ => {
                return Err(CliError::Usage(
                    "experiment --config expects an experiment manifest".into(),
                ))
            }
        },
        None => None,
    };
    let spec = match (from_manifest, args.preset) {
        (Some(spec), None) => spec,
        (Some(spec), Some(p)) if p == spec.preset => spec,
        (Some(_), Some(_)) => {
            return Err(CliError::Usage("preset does not match the manifest".into()))
        }
        (None, None) => return Err(CliError::Usage("missing experiment preset".into())),
        (None, Some(preset)) => {
            let induction = preset.is_induction();
            if induction && args.matrix != crate::cli::MatrixArg::Proposed {
                return Err(CliError::Usage(
                    "--matrix only applies to the grid presets".into(),
                ));
            }
            if !induction && args.mu.is_some() {
                return Err(CliError::Usage(
                    "--mu only applies to the induction presets".into(),
                ));
            }
            if args.reps == 0 {
                return Err(CliError::Usage("--reps must be at least 1".into()));
            }
            ExperimentSpec {
                preset,
                matrix: GridMatrix::from(args.matrix),
                repetitions: if induction { 1 } else { args.reps },
                mu: args.mu,
                base_seed: cli.seed.unwrap_or(DEFAULT_EXPERIMENT_SEED),
            }
        }
    };
    if let Some(mu) = spec.mu {
        if !(mu >= 0.0 && mu.is_finite()) {
            return Err(CliError::Usage("--mu must be >= 0".into()));
        }
    }
    let report = run_experiment(&spec, execution(cli.jobs))?;

    let manifest = RunManifest::new(
        cli.config.as_deref(),
        &cli.out,
        spec.base_seed,
        Resolved::Experiment { spec: spec.clone() },
    );
    write_out(&cli.out, MANIFEST_NAME, &manifest.to_toml()?)?;
    write_out(&cli.out, "runs.csv", &write_runs_csv(&report))?;
    write_out(&cli.out, "summary.csv", &write_summary_csv(&report))?;
    let induction = spec.is_induction();
    match spec.preset {
        Preset::InductionAsym | Preset::InductionSym => {
            let labels: Vec<String> = report.cells.iter().map(|c| c.label.clone()).collect();
            let values: Vec<f64> = report
                .cells
                .iter()
                .map(|c| c.mean_lateral[1] * 1e3)
                .collect();
            let refs: Vec<Option<f64>> = report
                .cells
                .iter()
                .map(|c| c.design.map(|d| d * 1e3))
                .collect();
            let svg = svg_bar_chart(&report.name, "steady ΔX_y [mm]", &labels, &values, &refs);
            write_out(&cli.out, "induction.svg", &svg)?;
        }
        Preset::PihGrid30mm | Preset::PihGrid20mm => {
            write_out(&cli.out, "grid.svg", &svg_grid_plot(&report.name, &report))?;
            let labels: Vec<String> = report
                .cells
                .iter()
                .map(|c| format!("({:.0},{:.0})", c.cell[0] * 1e3, c.cell[1] * 1e3))
                .collect();
            let values: Vec<f64> = report
                .cells
                .iter()
                .map(|c| c.mean_time.unwrap_or(0.0))
                .collect();
            let svg = svg_bar_chart(
                &report.name,
                "mean insertion time [s]",
                &labels,
                &values,
                &[],
            );
            write_out(&cli.out, "times.svg", &svg)?;
        }
    }
    print!("{}", summary_table(&report, induction));
    println!("wrote {} runs to {}", report.runs.len(), cli.out.display());
    Ok(0)
}

fn summary_table(report: &ExperimentReport, induction: bool) -> String {
    let mut out = format!("{}\n", report.name);
    if induction {
        let _ = writeln!(
            out,
            "{:<10} {:>12} {:>12} {:>10}",
            "label", "dY [mm]", "design [mm]", "diverged"
        );
        for c in &report.cells {
            let design = c
                .design
                .map_or_else(|| "-".to_string(), |d| format!("{:.1}", d * 1e3));
            let _ = writeln!(
                out,
                "{:<10} {:>12.3} {:>12} {:>10}",
                c.label,
                c.mean_lateral[1] * 1e3,
                design,
                c.diverged
            );
        }
        return out;
    }
    let _ = writeln!(
        out,
        "{:<10} {:>8} {:>8} {:>9} {:>10} {:>10}",
        "label", "err x", "err y", "success", "time [s]", "std [s]"
    );
    for c in &report.cells {
        let fmt = |v: Option<f64>| v.map_or_else(|| "-".to_string(), |t| format!("{t:.3}"));
        let _ = writeln!(
            out,
            "{:<10} {:>8.1} {:>8.1} {:>9} {:>10} {:>10}",
            c.label,
            c.cell[0] * 1e3,
            c.cell[1] * 1e3,
            format!("{}/{}", c.successes, c.runs),
            fmt(c.mean_time),
            fmt(c.std_time)
        );
    }
    out
}
