//! Scenario files, figure presets and the artifacts of a run.
//!
//! A scenario is a TOML document (dialect version [`CONFIG_FORMAT`]) with a
//! `name` and a `[scenario]` table whose `kind` selects the model. Every run
//! writes CSV files with a commented header and then `manifest.json`.

mod config;
mod output;
mod presets;
mod run;

pub use config::{apply_override, Grid, GridRange, Scenario, ScenarioConfig, SweepAxis, CONFIG_FORMAT};
pub use output::{CsvTable, OutputRecord, PointStatus, RunManifest};
pub use presets::{preset_toml, Preset, PRESETS};
pub use run::{run, RunReport};

use crate::error::{Error, Result};

/// Reads a preset by name or a config file by path, then applies overrides.
pub fn resolve(spec: &str, overrides: &[String]) -> Result<ScenarioConfig> {
    let text = match preset_toml(spec) {
        Some(t) => t,
        None => std::fs::read_to_string(spec)
            .map_err(|e| Error::Config(format!("`{spec}` is neither a preset nor a readable file: {e}")))?,
    };
    ScenarioConfig::from_toml_with_overrides(&text, overrides)
}
