//! TOML scenario files.
//!
//! A config has four optional sections; anything left out falls back to the
//! 30 mm peg, the control-table admittance and the default diagonal stiffness.
//!
//! ```toml
//! [geometry]
//! peg = "20mm"
//! mu = 0.2
//!
//! [admittance]
//! ts = 0.001
//!
//! [stiffness]
//! design = { delta_set = 0.005, l_set = 0.0035 }
//!
//! [scenario]
//! initial_error = [0.005, 0.0]
//! ```

use std::path::{Path, PathBuf};

use compliance_core::experiments::{grid_stiffness, GridMatrix, PegDiameter, ScenarioConfig};
use compliance_core::io::parse_matrix_csv;
use compliance_core::stiffness::{design_task_nondiagonal, presets, DEFAULT_DIAGONAL};
use compliance_core::{
    AdmittanceParams, Mat6, PegHoleGeometry, StiffnessMatrix, TaskDesignSpec, Vec6,
};
use serde::Deserialize;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(default)]
    pub geometry: GeometrySection,
    #[serde(default)]
    pub admittance: AdmittanceSection,
    #[serde(default)]
    pub stiffness: StiffnessSection,
    #[serde(default)]
    pub scenario: ScenarioSection,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometrySection {
    /// `"20mm"` or `"30mm"`; the fields below override it.
    pub peg: Option<String>,
    pub r: Option<f64>,
    pub c: Option<f64>,
    pub mu: Option<f64>,
    pub peg_length: Option<f64>,
    pub contact_stiffness: Option<f64>,
    pub contact_damping: Option<f64>,
    pub rim_points: Option<usize>,
    pub v_eps: Option<f64>,
    pub f_thresh: Option<f64>,
    pub hysteresis: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AdmittanceSection {
    pub mass: Option<[f64; 6]>,
    pub damping: Option<[f64; 6]>,
    pub ts: Option<f64>,
    pub filter_cutoff_hz: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StiffnessSection {
    /// `K_n20`..`K_n120`, `K_d20`, `K_d30`, `proposed-20mm`, `proposed-30mm` or `rcc`.
    pub preset: Option<String>,
    pub diagonal: Option<[f64; 6]>,
    pub matrix: Option<[[f64; 6]; 6]>,
    /// Matrix CSV, relative to the config file.
    pub file: Option<PathBuf>,
    pub design: Option<DesignSection>,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DesignSection {
    pub delta_set: f64,
    pub l_set: f64,
    pub delta_l: Option<f64>,
    pub mu_assumed: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioSection {
    pub initial_error: Option<[f64; 2]>,
    pub start_height: Option<f64>,
    pub approach_speed: Option<f64>,
    pub press_depth: Option<f64>,
    pub duration: Option<f64>,
    pub success_depth: Option<f64>,
    pub timeout: Option<f64>,
    pub stop_on_success: Option<bool>,
    pub jitter: Option<f64>,
    pub seed: Option<u64>,
    pub divergence_bound: Option<f64>,
    pub decimation: Option<usize>,
}

pub fn parse_config(text: &str) -> CliResult<ConfigFile> {
    toml::from_str(text).map_err(|e| CliError::Config(format!("invalid config: {e}")))
}

fn set<T: Copy>(target: &mut T, value: Option<T>) {
    if let Some(v) = value {
        *target = v;
    }
}

fn peg(name: &str) -> CliResult<PegDiameter> {
    match name {
        "20mm" => Ok(PegDiameter::D20),
        "30mm" => Ok(PegDiameter::D30),
        other => Err(CliError::Config(format!(
            "unknown peg '{other}' (expected 20mm or 30mm)"
        ))),
    }
}

impl GeometrySection {
    pub fn resolve(&self) -> CliResult<PegHoleGeometry> {
        let mut g = match &self.peg {
            Some(name) => peg(name)?.geometry(),
            None => PegHoleGeometry::peg_30mm(),
        };
        set(&mut g.r, self.r);
        set(&mut g.c, self.c);
        set(&mut g.mu, self.mu);
        set(&mut g.peg_length, self.peg_length);
        set(&mut g.contact_stiffness, self.contact_stiffness);
        set(&mut g.contact_damping, self.contact_damping);
        set(&mut g.rim_points, self.rim_points);
        set(&mut g.v_eps, self.v_eps);
        set(&mut g.f_thresh, self.f_thresh);
        set(&mut g.hysteresis, self.hysteresis);
        g.validate()?;
        Ok(g)
    }
}

fn named_preset(name: &str) -> CliResult<StiffnessMatrix> {
    let found = presets::asymmetric()
        .into_iter()
        .chain(presets::symmetric())
        .find(|(label, _, _)| *label == name);
    if let Some((_, _, k)) = found {
        return Ok(k);
    }
    let k = match name {
        "proposed-20mm" => grid_stiffness(PegDiameter::D20, GridMatrix::Proposed)?,
        "proposed-30mm" => grid_stiffness(PegDiameter::D30, GridMatrix::Proposed)?,
        "rcc" => grid_stiffness(PegDiameter::D30, GridMatrix::Rcc)?,
        other => {
            return Err(CliError::Config(format!(
                "unknown stiffness preset '{other}'"
            )))
        }
    };
    Ok(k)
}

impl StiffnessSection {
    /// `base_dir` anchors a relative `file`.
    pub fn resolve(&self, base_dir: &Path) -> CliResult<StiffnessMatrix> {
        let sources = [
            self.preset.is_some(),
            self.matrix.is_some(),
            self.file.is_some(),
            self.design.is_some(),
        ];
        if sources.iter().filter(|s| **s).count() > 1 {
            return Err(CliError::Config(
                "[stiffness] takes only one of preset, matrix, file or design".into(),
            ));
        }
        let diag = Vec6(self.diagonal.unwrap_or(DEFAULT_DIAGONAL.0));
        if let Some(name) = &self.preset {
            return named_preset(name);
        }
        if let Some(rows) = self.matrix {
            return Ok(StiffnessMatrix::new(Mat6(rows))?);
        }
        if let Some(file) = &self.file {
            let path = base_dir.join(file);
            let text = std::fs::read_to_string(&path).map_err(|e| CliError::io(&path, e))?;
            let parsed = parse_matrix_csv(&text)
                .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
            return Ok(StiffnessMatrix::new(parsed.matrix)?);
        }
        if let Some(d) = &self.design {
            let spec = TaskDesignSpec {
                delta_set: d.delta_set,
                l_set: d.l_set,
                delta_l: d.delta_l.unwrap_or(presets::PRESS_DEPTH),
                k_diag: diag,
                mu_assumed: d.mu_assumed.unwrap_or(0.0),
            };
            return Ok(design_task_nondiagonal(&spec)?);
        }
        Ok(StiffnessMatrix::diagonal(&diag)?)
    }
}

impl ConfigFile {
    pub fn resolve(&self, base_dir: &Path) -> CliResult<ScenarioConfig> {
        let geometry = self.geometry.resolve()?;
        let mut admittance = AdmittanceParams::table(self.stiffness.resolve(base_dir)?);
        if let Some(m) = self.admittance.mass {
            admittance.mass = Vec6(m);
        }
        if let Some(d) = self.admittance.damping {
            admittance.damping = Vec6(d);
        }
        set(&mut admittance.ts, self.admittance.ts);
        if self.admittance.filter_cutoff_hz.is_some() {
            admittance.force_filter_cutoff = self.admittance.filter_cutoff_hz;
        }

        let s = &self.scenario;
        let mut cfg = ScenarioConfig::new(geometry, admittance);
        set(&mut cfg.initial_error, s.initial_error);
        set(&mut cfg.descent.start_height, s.start_height);
        set(&mut cfg.descent.approach_speed, s.approach_speed);
        set(&mut cfg.descent.press_depth, s.press_depth);
        set(&mut cfg.duration, s.duration);
        set(&mut cfg.success_depth, s.success_depth);
        set(&mut cfg.timeout, s.timeout);
        set(&mut cfg.stop_on_success, s.stop_on_success);
        set(&mut cfg.jitter, s.jitter);
        set(&mut cfg.seed, s.seed);
        set(&mut cfg.divergence_bound, s.divergence_bound);
        set(&mut cfg.decimation, s.decimation);
        cfg.validate()?;
        Ok(cfg)
    }
}
