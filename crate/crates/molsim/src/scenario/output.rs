use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::Result;

/// One CSV artifact: header comments, a column line and rows.
#[derive(Debug, Clone)]
pub struct CsvTable {
    pub file: String,
    pub columns: Vec<&'static str>,
    pub units: String,
    pub validity: String,
    pub rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn new(file: impl Into<String>, columns: &[&'static str], units: impl Into<String>) -> Self {
        Self { file: file.into(), columns: columns.to_vec(), units: units.into(), validity: "all rows valid".into(), rows: Vec::new() }
    }

    pub fn validity(mut self, note: impl Into<String>) -> Self {
        self.validity = note.into();
        self
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, scenario: &str, name: &str, parameters: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# molsim {}", env!("CARGO_PKG_VERSION"));
        let _ = writeln!(s, "# scenario: {scenario}");
        let _ = writeln!(s, "# name: {name}");
        let _ = writeln!(s, "# parameters: {parameters}");
        let _ = writeln!(s, "# units: {}", self.units);
        let _ = writeln!(s, "# validity: {}", self.validity);
        let _ = writeln!(s, "{}", self.columns.join(","));
        for row in &self.rows {
            let _ = writeln!(s, "{}", row.join(","));
        }
        s
    }
}

pub fn num(x: f64) -> String {
    format!("{x:?}")
}

pub fn opt(x: Option<f64>) -> String {
    x.map_or_else(|| "nan".into(), num)
}

pub fn flag(b: bool) -> String {
    (b as u8).to_string()
}

#[derive(Debug, Clone, Serialize)]
pub struct OutputRecord {
    pub file: String,
    pub sha256: String,
    pub rows: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct PointStatus {
    pub point: String,
    pub converged: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// Provenance written as `manifest.json` after every CSV.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub name: String,
    pub scenario: String,
    pub toolkit_version: String,
    pub config_format: u32,
    /// SHA-256 of the resolved config (after overrides) in canonical JSON.
    pub config_hash: String,
    pub config: serde_json::Value,
    pub workers: usize,
    pub wall_time_seconds: f64,
    pub outputs: Vec<OutputRecord>,
    pub points: Vec<PointStatus>,
    pub failed_points: usize,
}

impl RunManifest {
    pub fn all_failed(&self) -> bool {
        !self.points.is_empty() && self.failed_points == self.points.len()
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn write_table(dir: &Path, table: &CsvTable, scenario: &str, name: &str, parameters: &str) -> Result<OutputRecord> {
    let text = table.render(scenario, name, parameters);
    std::fs::write(dir.join(&table.file), &text)?;
    Ok(OutputRecord { file: table.file.clone(), sha256: sha256_hex(text.as_bytes()), rows: table.rows.len() })
}
