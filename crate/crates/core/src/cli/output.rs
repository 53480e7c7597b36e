//! CSV tables and run manifests.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use serde_json::Value;

use crate::constants::PhysicalConstants;

/// Shortest round-trip decimal form of a binary64, in exponent notation.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:e}")
}

pub fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}

/// A CSV file with `#`-prefixed `key=value` header comments.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    pub file_name: String,
    comments: Vec<String>,
    columns: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn new(file_name: impl Into<String>, columns: &[&'static str]) -> Self {
        CsvTable {
            file_name: file_name.into(),
            comments: Vec::new(),
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn comment(&mut self, key: &str, value: impl std::fmt::Display) -> &mut Self {
        self.comments.push(format!("{key}={value}"));
        self
    }

    pub fn row(&mut self, cells: Vec<String>) -> &mut Self {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
        self
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.comments {
            out.push_str("# ");
            out.push_str(c);
            out.push('\n');
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    pub fn write_to(&self, dir: &Path) -> io::Result<PathBuf> {
        let path = dir.join(&self.file_name);
        fs::write(&path, self.render())?;
        Ok(path)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunManifest {
    pub config_hash: String,
    pub canonical_config: String,
    pub constants_version: &'static str,
    pub code_version: &'static str,
    pub timestamp_unix_s: u64,
    pub command: String,
    pub output_files: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub frequency_conversion: Option<String>,
    pub summary: Value,
}

impl RunManifest {
    pub fn new(
        command: &str,
        config_hash: String,
        canonical_config: String,
        output_files: Vec<String>,
        frequency_conversion: Option<String>,
        summary: Value,
    ) -> Self {
        RunManifest {
            config_hash,
            canonical_config,
            constants_version: PhysicalConstants::VERSION,
            code_version: env!("CARGO_PKG_VERSION"),
            timestamp_unix_s: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            command: command.to_string(),
            output_files,
            frequency_conversion,
            summary,
        }
    }

    pub const FILE_NAME: &'static str = "manifest.json";

    pub fn write_to(&self, dir: &Path) -> io::Result<PathBuf> {
        let path = dir.join(Self::FILE_NAME);
        let mut text = serde_json::to_string_pretty(self).map_err(io::Error::other)?;
        text.push('\n');
        fs::write(&path, text)?;
        Ok(path)
    }
}
