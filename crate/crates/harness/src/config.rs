//! Experiment descriptions as read from JSON.

use std::path::{Path, PathBuf};

use dixmier_core::catalog::{self, EntryKind};
use dixmier_core::traces::{ScaleGrid, ScaleKind};
use dixmier_core::weight::{WeightFunction, WeightSpec};
use dixmier_core::weyl::Quantization;
use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    PsiReport,
    LorentzReport,
    TraceCompare,
    Karamata,
    WeylCompare,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub kind: ScaleKind,
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl GridConfig {
    pub fn build(&self) -> Result<ScaleGrid> {
        let g = match self.kind {
            ScaleKind::Direct => ScaleGrid::direct(self.min, self.max, self.points),
            ScaleKind::Exponent => ScaleGrid::exponent(self.min, self.max, self.points),
        };
        g.map_err(HarnessError::config)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuantizationConfig {
    #[serde(rename = "L")]
    pub l: f64,
    #[serde(rename = "N")]
    pub n: usize,
}

impl From<QuantizationConfig> for Quantization {
    fn from(q: QuantizationConfig) -> Self {
        Quantization { l: q.l, n: q.n }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Outputs {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub csv: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub json: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    #[serde(default = "default_weight")]
    pub weight: WeightSpec,
    /// Catalog id of an analytic or built-in profile.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profile: Option<String>,
    /// `knot,value` file with a finite profile; takes the place of `profile`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profile_csv: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symbol: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub karamata: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quantization: Option<QuantizationConfig>,
    #[serde(default)]
    pub outputs: Outputs,
    #[serde(default)]
    pub seed: u64,
}

fn default_weight() -> WeightSpec {
    WeightSpec::Iterlog { n: 1, beta: 1.0 }
}

impl ExperimentConfig {
    pub fn new(experiment: ExperimentKind) -> Self {
        ExperimentConfig {
            experiment,
            weight: default_weight(),
            profile: None,
            profile_csv: None,
            symbol: None,
            karamata: None,
            grid: None,
            quantization: None,
            outputs: Outputs::default(),
            seed: 0,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| HarnessError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn weight_function(&self) -> Result<WeightFunction> {
        WeightFunction::new(self.weight.clone()).map_err(HarnessError::config)
    }

    /// Grid for the experiment: the configured one, or the default for its kind.
    pub fn scale_grid(&self) -> Result<ScaleGrid> {
        match (&self.grid, self.experiment) {
            (Some(g), _) => g.build(),
            (None, ExperimentKind::Karamata) => GridConfig { kind: ScaleKind::Direct, min: 1e-2, max: 1e6, points: 40 }.build(),
            (None, _) => ScaleGrid::standard_exponent(30.0).map_err(HarnessError::config),
        }
    }

    pub fn quantization(&self) -> Quantization {
        self.quantization.unwrap_or(QuantizationConfig { l: 12.0, n: 512 }).into()
    }

    /// Checks ids, grids and the fields each experiment needs.
    pub fn validate(&self) -> Result<()> {
        use ExperimentKind::*;
        let missing = |field: &str| HarnessError::Config(format!("experiment {:?} needs `{field}`", self.experiment));
        self.weight_function()?;
        if let Some(id) = &self.profile {
            check_id(EntryKind::Profile, id)?;
        }
        if let Some(id) = &self.symbol {
            check_id(EntryKind::Symbol, id)?;
        }
        if let Some(id) = &self.karamata {
            check_id(EntryKind::Karamata, id)?;
        }
        if self.profile.is_some() && self.profile_csv.is_some() {
            return Err(HarnessError::Config("give either `profile` or `profile_csv`, not both".into()));
        }
        let grid = self.scale_grid()?;
        match self.experiment {
            PsiReport => {}
            LorentzReport | TraceCompare => {
                if self.profile.is_none() && self.profile_csv.is_none() {
                    return Err(missing("profile"));
                }
                if self.experiment == TraceCompare && grid.kind() != ScaleKind::Exponent {
                    return Err(HarnessError::Config("trace_compare needs an exponent grid".into()));
                }
            }
            Karamata => {
                self.karamata.as_ref().ok_or_else(|| missing("karamata"))?;
                if grid.kind() != ScaleKind::Direct {
                    return Err(HarnessError::Config("karamata needs a direct grid".into()));
                }
            }
            WeylCompare => {
                self.symbol.as_ref().ok_or_else(|| missing("symbol"))?;
                if grid.kind() != ScaleKind::Exponent {
                    return Err(HarnessError::Config("weyl_compare needs an exponent grid".into()));
                }
                let q = self.quantization();
                if !(q.l.is_finite() && q.l > 0.0) || q.n < 2 || !q.n.is_multiple_of(2) {
                    return Err(HarnessError::Config(format!("quantization needs L > 0 and even N >= 2, got L={}, N={}", q.l, q.n)));
                }
            }
        }
        Ok(())
    }
}

fn check_id(kind: EntryKind, id: &str) -> Result<()> {
    if catalog::contains(kind, id) {
        Ok(())
    } else {
        Err(HarnessError::Config(format!("unknown {} id `{id}`", format!("{kind:?}").to_lowercase())))
    }
}
