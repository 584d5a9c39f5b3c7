//! Report files: CSV tables with lossless float formatting, JSON
//! tables, exported JSON blobs, and the run manifest.
//!
//! Table bytes depend only on the computed values, so reruns with the
//! same configuration and seed write identical CSV. The manifest also
//! records the wall time and is the one file that may differ between
//! reruns.

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use crate::config::{ExperimentConfig, OutputFormat};
use crate::experiments::RunOutput;
use crate::RunError;

/// 17 significant digits, enough to round-trip every f64.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// One table cell. Text cells must stay free of separators; every
/// numeric value goes through the lossless float format.
#[derive(Clone, Debug)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Bool(bool),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format_float(*v),
            Cell::Text(s) => {
                debug_assert!(!s.contains(',') && !s.contains('\n'));
                s.clone()
            }
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Float(v) => json!(v),
            Cell::Text(s) => json!(s),
            Cell::Bool(b) => json!(b),
        }
    }
}

/// Named table with a fixed column set.
#[derive(Clone, Debug)]
pub struct Table {
    pub name: String,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&'static str]) -> Self {
        Table {
            name: name.to_string(),
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width in {}", self.name);
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut text = self.columns.join(",");
        text.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            text.push_str(&cells.join(","));
            text.push('\n');
        }
        text
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| Value::Array(row.iter().map(Cell::json).collect()))
            .collect();
        json!({ "columns": self.columns, "rows": rows })
    }
}

/// One named check with its outcome and a human-readable detail line.
#[derive(Clone, Debug)]
pub struct Verdict {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Verdict {
    pub fn check(name: &str, pass: bool, detail: String) -> Self {
        Verdict {
            name: name.to_string(),
            pass,
            detail,
        }
    }

    pub fn line(&self) -> String {
        let tag = if self.pass { "PASS" } else { "FAIL" };
        format!("[{tag}] {}: {}", self.name, self.detail)
    }
}

fn write_text(path: &Path, text: &str) -> Result<(), RunError> {
    fs::write(path, text)
        .map_err(|e| RunError::Config(format!("cannot write {}: {e}", path.display())))
}

fn pretty(value: &Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report JSON is serializable");
    text.push('\n');
    text
}

/// Write every table, every exported blob, the stored configuration,
/// and the manifest into `out_dir`. Returns the written paths in
/// order.
pub fn write_reports(
    cfg: &ExperimentConfig,
    output: &RunOutput,
    out_dir: &Path,
    wall_ms: f64,
) -> Result<Vec<PathBuf>, RunError> {
    fs::create_dir_all(out_dir)
        .map_err(|e| RunError::Config(format!("cannot create {}: {e}", out_dir.display())))?;
    let mut written = Vec::new();
    for table in &output.tables {
        let path = match cfg.format {
            OutputFormat::Csv => out_dir.join(format!("{}.csv", table.name)),
            OutputFormat::Json => out_dir.join(format!("{}.json", table.name)),
        };
        let text = match cfg.format {
            OutputFormat::Csv => table.to_csv(),
            OutputFormat::Json => pretty(&table.to_json()),
        };
        write_text(&path, &text)?;
        written.push(path);
    }
    for (name, blob) in &output.json_blobs {
        let path = out_dir.join(format!("{name}.json"));
        write_text(&path, &pretty(blob))?;
        written.push(path);
    }
    let config_path = out_dir.join(format!("{}_config.json", cfg.experiment));
    write_text(&config_path, &cfg.canonical_json())?;
    written.push(config_path);

    let verdicts: Vec<Value> = output
        .verdicts
        .iter()
        .map(|v| json!({ "name": v.name, "pass": v.pass, "detail": v.detail }))
        .collect();
    let outputs: Vec<String> = written
        .iter()
        .map(|p| p.file_name().unwrap().to_string_lossy().into_owned())
        .collect();
    let manifest = json!({
        "experiment": cfg.experiment,
        "config": serde_json::to_value(cfg).expect("config serialization is infallible"),
        "config_sha256": cfg.sha256(),
        "seed": cfg.seed,
        "verdicts": verdicts,
        "all_pass": output.all_pass(),
        "outputs": outputs,
        "wall_ms": wall_ms,
    });
    let manifest_path = out_dir.join(format!("{}_manifest.json", cfg.experiment));
    write_text(&manifest_path, &pretty(&manifest))?;
    written.push(manifest_path);
    Ok(written)
}
