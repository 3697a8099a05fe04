use std::path::Path;

use compliance_core::experiments::{GridMatrix, ScenarioConfig};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const MANIFEST_NAME: &str = "manifest.toml";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Preset {
    InductionAsym,
    InductionSym,
    #[value(name = "pih-grid-30mm")]
    #[serde(rename = "pih-grid-30mm")]
    PihGrid30mm,
    #[value(name = "pih-grid-20mm")]
    #[serde(rename = "pih-grid-20mm")]
    PihGrid20mm,
}

impl Preset {
    pub fn name(self) -> &'static str {
        match self {
            Preset::InductionAsym => "induction-asym",
            Preset::InductionSym => "induction-sym",
            Preset::PihGrid30mm => "pih-grid-30mm",
            Preset::PihGrid20mm => "pih-grid-20mm",
        }
    }

    pub fn is_induction(self) -> bool {
        matches!(self, Preset::InductionAsym | Preset::InductionSym)
    }
}

/// Everything an experiment run depends on besides the tool version.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub preset: Preset,
    pub matrix: GridMatrix,
    pub repetitions: usize,
    pub mu: Option<f64>,
    pub base_seed: u64,
}

impl ExperimentSpec {
    pub fn is_induction(&self) -> bool {
        self.preset.is_induction()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Resolved {
    Sim { scenario: Box<ScenarioConfig> },
    Experiment { spec: ExperimentSpec },
}

/// Written next to every output set; feeding it back through `--config`
/// repeats the run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool_version: String,
    pub config_path: Option<String>,
    pub out_dir: String,
    pub seed: u64,
    pub resolved: Resolved,
}

impl RunManifest {
    pub fn new(config_path: Option<&Path>, out_dir: &Path, seed: u64, resolved: Resolved) -> Self {
        RunManifest {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            config_path: config_path.map(|p| p.display().to_string()),
            out_dir: out_dir.display().to_string(),
            seed,
            resolved,
        }
    }

    pub fn to_toml(&self) -> CliResult<String> {
        toml::to_string(self)
            .map_err(|e| CliError::Config(format!("cannot serialise manifest: {e}")))
    }

    pub fn from_toml(text: &str) -> CliResult<Self> {
        toml::from_str(text).map_err(|e| CliError::Config(format!("invalid manifest: {e}")))
    }

    /// Cheap test for whether a config file is a manifest.
    pub fn looks_like(text: &str) -> bool {
        text.parse::<toml::Table>()
            .map(|t| t.contains_key("tool_version") && t.contains_key("resolved"))
            .unwrap_or(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use compliance_core::experiments::{pih_scenario, PegDiameter};

    #[test]
    fn manifest_round_trips() {
        let mut scenario = pih_scenario(
            PegDiameter::D20,
            GridMatrix::Proposed,
            [0.005, -0.005],
            u32::MAX as u64,
        )
        .unwrap();
        scenario.admittance.force_filter_cutoff = Some(1.5);
        let m = RunManifest::new(
            Some(Path::new("a.toml")),
            Path::new("out"),
            7,
            Resolved::Sim {
                scenario: Box::new(scenario),
            },
        );
        let text = m.to_toml().unwrap();
        assert!(RunManifest::looks_like(&text));
        assert_eq!(RunManifest::from_toml(&text).unwrap(), m);

        let e = RunManifest::new(
            None,
            Path::new("out"),
            3,
            Resolved::Experiment {
                spec: ExperimentSpec {
                    preset: Preset::PihGrid30mm,
                    matrix: GridMatrix::Rcc,
                    repetitions: 5,
                    mu: None,
                    base_seed: 3,
                },
            },
        );
        assert_eq!(RunManifest::from_toml(&e.to_toml().unwrap()).unwrap(), e);
    }
}
