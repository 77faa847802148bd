use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::counting::CountingModel;
use crate::error::{Error, Result};
use crate::micromaser::{MicromaserParams, SteadyStateMethod};
use crate::momentum::MomentumModel;
use crate::passage::{InitialState, PassageOptions};

/// Version of the config dialect, recorded in every manifest.
pub const CONFIG_FORMAT: u32 = 1;

fn format_version() -> u32 {
    CONFIG_FORMAT
}

/// A run description, read from TOML.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    #[serde(default = "format_version")]
    pub format: u32,
    pub name: String,
    #[serde(default)]
    pub description: String,
    #[serde(default)]
    pub output_dir: Option<PathBuf>,
    #[serde(default)]
    pub workers: Option<usize>,
    pub scenario: Scenario,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepAxis {
    /// Pump parameter in units of π.
    ThetaOverPi,
    /// `u_b/t_J` at the template's `t_J`.
    UbOverTj,
}

fn phase_points() -> usize {
    crate::micromaser::DEFAULT_GRID
}

fn population_points() -> usize {
    400
}

/// Selected by the single key of the `[scenario]` table, e.g.
/// `[scenario.micromaser-sweep]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum Scenario {
    MicromaserSweep {
        #[serde(default)]
        params: MicromaserParams,
        axis: SweepAxis,
        grid: Grid,
        #[serde(default)]
        method: SteadyStateMethod,
    },
    MicromaserPhase {
        #[serde(default)]
        params: MicromaserParams,
        u_b_over_t_j: Grid,
        #[serde(default = "phase_points")]
        phase_points: usize,
        #[serde(default)]
        method: SteadyStateMethod,
    },
    MicromaserDistribution {
        #[serde(default)]
        params: MicromaserParams,
        #[serde(default)]
        method: SteadyStateMethod,
    },
    PassageTime {
        n: Vec<usize>,
        initial: Vec<InitialState>,
        fraction: f64,
        #[serde(default)]
        delta: f64,
        #[serde(default)]
        options: PassageOptions,
        #[serde(default = "population_points")]
        population_points: usize,
    },
    Counting {
        model: CountingModel,
        times: Grid,
        /// Values of `V` for a `g²(0⁺)` sweep; BCS models only.
        #[serde(default)]
        coupling_sweep: Option<Grid>,
    },
    Momentum {
        models: Vec<MomentumModel>,
        /// Shared momentum grid; each model's default when absent.
        #[serde(default)]
        p: Option<Grid>,
    },
}

impl Scenario {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::MicromaserSweep { .. } => "micromaser-sweep",
            Self::MicromaserPhase { .. } => "micromaser-phase",
            Self::MicromaserDistribution { .. } => "micromaser-distribution",
            Self::PassageTime { .. } => "passage-time",
            Self::Counting { .. } => "counting",
            Self::Momentum { .. } => "momentum",
        }
    }
}

/// Explicit values or an evenly spaced range.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Grid {
    Values(Vec<f64>),
    Range(GridRange),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridRange {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    /// Geometric instead of arithmetic spacing.
    #[serde(default)]
    pub log: bool,
}

impl Grid {
    pub fn values(&self) -> Vec<f64> {
        match self {
            Grid::Values(v) => v.clone(),
            Grid::Range(r) => {
                if r.points == 1 {
                    return vec![r.start];
                }
                let last = (r.points.max(1) - 1) as f64;
                (0..r.points)
                    .map(|i| {
                        let s = i as f64 / last;
                        if r.log {
                            r.start * (r.stop / r.start).powf(s)
                        } else {
                            r.start + (r.stop - r.start) * s
                        }
                    })
                    .collect()
            }
        }
    }

    fn check(&self, field: &str) -> Result<()> {
        if let Grid::Range(r) = self {
            if r.log && !(r.start > 0.0 && r.stop > 0.0) {
                return Err(config_error(field, "log grid needs positive bounds"));
            }
        }
        let v = self.values();
        if v.is_empty() {
            return Err(config_error(field, "grid is empty"));
        }
        if v.iter().any(|x| !x.is_finite()) {
            return Err(config_error(field, "grid values must be finite"));
        }
        Ok(())
    }
}

pub(crate) fn config_error(field: &str, reason: impl std::fmt::Display) -> Error {
    Error::Config(format!("field `{field}`: {reason}"))
}

fn wrap(field: &str, r: Result<()>) -> Result<()> {
    r.map_err(|e| config_error(field, e))
}

impl ScenarioConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let config: Self = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    /// Parses, applies `overrides` in order and validates.
    pub fn from_toml_with_overrides(text: &str, overrides: &[String]) -> Result<Self> {
        if overrides.is_empty() {
            return Self::from_toml_str(text);
        }
        let mut table: toml::Table = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        for o in overrides {
            apply_override(&mut table, o)?;
        }
        Self::from_table(table)
    }

    pub fn from_table(table: toml::Table) -> Result<Self> {
        let config: Self = toml::Value::Table(table).try_into().map_err(|e: toml::de::Error| Error::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.format != CONFIG_FORMAT {
            return Err(config_error("format", format!("unsupported version {}, expected {CONFIG_FORMAT}", self.format)));
        }
        if self.name.trim().is_empty() {
            return Err(config_error("name", "must not be empty"));
        }
        if self.workers == Some(0) {
            return Err(config_error("workers", "must be at least 1"));
        }
        let k = self.scenario.kind();
        match &self.scenario {
            Scenario::MicromaserSweep { params, grid, axis, .. } => {
                wrap(&format!("scenario.{k}.params"), params.validate())?;
                grid.check(&format!("scenario.{k}.grid"))?;
                if *axis == SweepAxis::UbOverTj && params.t_j == 0.0 {
                    return Err(config_error(&format!("scenario.{k}.params.t_j"), "u-b-over-tj sweep needs t_j ≠ 0"));
                }
            }
            Scenario::MicromaserPhase { params, u_b_over_t_j, phase_points, .. } => {
                wrap(&format!("scenario.{k}.params"), params.validate())?;
                u_b_over_t_j.check(&format!("scenario.{k}.u_b_over_t_j"))?;
                if *phase_points < 2 {
                    return Err(config_error(&format!("scenario.{k}.phase_points"), "need at least 2"));
                }
            }
            Scenario::MicromaserDistribution { params, .. } => wrap(&format!("scenario.{k}.params"), params.validate())?,
            Scenario::PassageTime { n, initial, fraction, delta, population_points, .. } => {
                if n.is_empty() || n.contains(&0) {
                    return Err(config_error(&format!("scenario.{k}.n"), "need one or more positive pair numbers"));
                }
                if initial.is_empty() {
                    return Err(config_error(&format!("scenario.{k}.initial"), "need at least one initial state"));
                }
                if !(*fraction > 0.0 && *fraction <= 1.0) {
                    return Err(config_error(&format!("scenario.{k}.fraction"), format!("{fraction} not in (0, 1]")));
                }
                if !delta.is_finite() {
                    return Err(config_error(&format!("scenario.{k}.delta"), "must be finite"));
                }
                if *population_points < 2 {
                    return Err(config_error(&format!("scenario.{k}.population_points"), "need at least 2"));
                }
            }
            Scenario::Counting { model, times, coupling_sweep } => {
                wrap(&format!("scenario.{k}.model"), model.validate())?;
                times.check(&format!("scenario.{k}.times"))?;
                if times.values().iter().any(|t| *t < 0.0) {
                    return Err(config_error(&format!("scenario.{k}.times"), "times must be non-negative"));
                }
                if let Some(g) = coupling_sweep {
                    g.check(&format!("scenario.{k}.coupling_sweep"))?;
                    if !matches!(model, CountingModel::Bcs { .. }) {
                        return Err(config_error(&format!("scenario.{k}.coupling_sweep"), "only valid for a bcs model"));
                    }
                }
            }
            Scenario::Momentum { models, p } => {
                if models.is_empty() {
                    return Err(config_error(&format!("scenario.{k}.models"), "need at least one model"));
                }
                for m in models {
                    let r = match m {
                        MomentumModel::Bec(t) => t.validate(),
                        MomentumModel::Nfg(t) | MomentumModel::Bcs(t) => t.validate(),
                    };
                    wrap(&format!("scenario.{k}.models"), r)?;
                }
                if let Some(g) = p {
                    g.check(&format!("scenario.{k}.p"))?;
                    if g.values().iter().any(|x| *x < 0.0) {
                        return Err(config_error(&format!("scenario.{k}.p"), "momenta must be non-negative"));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Sets a dotted `key=value` path in a parsed config. Values are read as TOML
/// literals, falling back to a bare string.
pub fn apply_override(table: &mut toml::Table, assignment: &str) -> Result<()> {
    let (key, raw) = assignment
        .split_once('=')
        .ok_or_else(|| Error::Config(format!("override `{assignment}` is not key=value")))?;
    let key = key.trim();
    let raw = raw.trim();
    let value = toml::from_str::<toml::Table>(&format!("v = {raw}"))
        .ok()
        .and_then(|mut t| t.remove("v"))
        .unwrap_or_else(|| toml::Value::String(raw.to_string()));
    let parts: Vec<&str> = key.split('.').collect();
    if parts.iter().any(|p| p.is_empty()) {
        return Err(Error::Config(format!("override key `{key}` is malformed")));
    }
    let mut node = table;
    for part in &parts[..parts.len() - 1] {
        let entry = node.entry(part.to_string()).or_insert_with(|| toml::Value::Table(toml::Table::new()));
        node = entry
            .as_table_mut()
            .ok_or_else(|| Error::Config(format!("override `{key}`: `{part}` is not a table")))?;
    }
    node.insert(parts[parts.len() - 1].to_string(), value);
    Ok(())
}
