//! Output serialization: every run writes one table (CSV or JSON) whose
//! header embeds the full run manifest, so a result file is reproducible
//! from its own contents.

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use crate::error::CliError;

/// Environment variable holding the default output directory.
pub const OUT_DIR_ENV: &str = "AMPCOH_OUT_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn as_str(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }

    pub fn extension(self) -> &'static str {
        self.as_str()
    }
}

/// Everything needed to reproduce a run byte for byte.
#[derive(Debug, Clone)]
pub struct Manifest {
    pub command: &'static str,
    pub config: String,
    pub engine: &'static str,
    pub seed: u64,
    pub output_path: String,
    pub format: Format,
}

impl Manifest {
    fn pairs(&self) -> Vec<(&'static str, String)> {
        vec![
            ("command", self.command.to_string()),
            ("config", self.config.clone()),
            ("engine", self.engine.to_string()),
            ("seed", self.seed.to_string()),
            ("output_path", self.output_path.clone()),
            ("format", self.format.as_str().to_string()),
        ]
    }
}

/// One table cell. Floats are rendered with 12 significant digits in CSV
/// and as native numbers in JSON.
#[derive(Debug, Clone)]
pub enum Cell {
    U(u64),
    F(f64),
    S(String),
    B(bool),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::U(v) => v.to_string(),
            Cell::F(v) => format!("{:.11e}", normalize_zero(*v)),
            Cell::S(v) => v.clone(),
            Cell::B(v) => v.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::U(v) => json!(v),
            Cell::F(v) => json!(normalize_zero(*v)),
            Cell::S(v) => json!(v),
            Cell::B(v) => json!(v),
        }
    }
}

/// Entropy-like quantities can round to -0.0; render it as plain zero.
fn normalize_zero(v: f64) -> f64 {
    if v == 0.0 {
        0.0
    } else {
        v
    }
}

/// Resolve the output path: an explicit `--output` wins; otherwise the file
/// is named after the command and placed in `$AMPCOH_OUT_DIR` (or the
/// working directory when the variable is unset).
pub fn resolve_output(
    explicit: Option<PathBuf>,
    command: &str,
    format: Format,
) -> PathBuf {
    match explicit {
        Some(p) => p,
        None => {
            let dir = std::env::var_os(OUT_DIR_ENV)
                .map(PathBuf::from)
                .unwrap_or_else(|| PathBuf::from("."));
            dir.join(format!("{command}.{}", format.extension()))
        }
    }
}

/// Serialize the table and write it to `manifest.output_path`. `summary`
/// key/value pairs land in the header comments (CSV) or a `summary` object
/// (JSON). Returns the number of data rows written.
pub fn write_table(
    manifest: &Manifest,
    columns: &[&str],
    rows: &[Vec<Cell>],
    summary: &[(&str, String)],
) -> Result<usize, CliError> {
    let bytes = match manifest.format {
        Format::Csv => render_csv(manifest, columns, rows, summary),
        Format::Json => render_json(manifest, columns, rows, summary),
    };
    let path = Path::new(&manifest.output_path);
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    fs::write(path, bytes)?;
    Ok(rows.len())
}

fn render_csv(
    manifest: &Manifest,
    columns: &[&str],
    rows: &[Vec<Cell>],
    summary: &[(&str, String)],
) -> Vec<u8> {
    let mut out = String::new();
    for (key, value) in manifest.pairs() {
        out.push_str(&format!("# {key}: {value}\n"));
    }
    for (key, value) in summary {
        out.push_str(&format!("# {key}: {value}\n"));
    }
    out.push_str(&columns.join(","));
    out.push('\n');
    for row in rows {
        debug_assert_eq!(row.len(), columns.len());
        let line: Vec<String> = row.iter().map(Cell::csv).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out.into_bytes()
}

fn render_json(
    manifest: &Manifest,
    columns: &[&str],
    rows: &[Vec<Cell>],
    summary: &[(&str, String)],
) -> Vec<u8> {
    let manifest_obj: Value = manifest
        .pairs()
        .into_iter()
        .map(|(k, v)| (k.to_string(), json!(v)))
        .collect::<serde_json::Map<String, Value>>()
        .into();
    let summary_obj: Value = summary
        .iter()
        .map(|(k, v)| (k.to_string(), json!(v)))
        .collect::<serde_json::Map<String, Value>>()
        .into();
    let rows_json: Vec<Value> = rows
        .iter()
        .map(|row| Value::Array(row.iter().map(Cell::json).collect()))
        .collect();
    let doc = json!({
        "manifest": manifest_obj,
        "summary": summary_obj,
        "columns": columns,
        "rows": rows_json,
    });
    let mut bytes = serde_json::to_vec_pretty(&doc).expect("JSON serialization");
    bytes.push(b'\n');
    bytes
}
