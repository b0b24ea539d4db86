//! CSV tables with `#` metadata lines and their JSON run manifests.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(i64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

/// Floats carry nine significant digits.
fn format_float(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{v:.8e}")
    }
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub metadata: Vec<(String, String)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self {
            columns,
            ..Self::default()
        }
    }

    pub fn meta(&mut self, key: &str, value: impl ToString) {
        self.metadata.push((key.to_string(), value.to_string()));
    }

    pub fn meta_float(&mut self, key: &str, value: f64) {
        self.meta(key, format_float(value));
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.metadata {
            let _ = writeln!(out, "# {k} = {v}");
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|c| match c {
                    Cell::Float(v) => format_float(*v),
                    Cell::Int(v) => v.to_string(),
                    Cell::Text(s) => s.clone(),
                })
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

/// Machine-readable description of one run.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub args: Vec<String>,
    pub material: serde_json::Value,
    pub parameters: serde_json::Value,
    pub grid: serde_json::Value,
    pub notes: Vec<String>,
    pub rows: usize,
    pub output: Option<PathBuf>,
    pub wall_time_s: f64,
}

pub fn manifest_path(output: &Path) -> PathBuf {
    let mut name = output.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}

/// Writes the CSV and its manifest. With no output path the CSV goes to
/// stdout and the manifest to stderr. A failed write leaves no partial file.
pub fn emit(table: &Table, manifest: &RunManifest, output: Option<&Path>) -> io::Result<()> {
    let csv = table.render();
    let json = serde_json::to_string_pretty(manifest).map_err(io::Error::other)?;
    match output {
        None => {
            io::stdout().lock().write_all(csv.as_bytes())?;
            writeln!(io::stderr().lock(), "{json}")?;
        }
        Some(path) => {
            let side = manifest_path(path);
            let result = fs::write(path, csv).and_then(|_| fs::write(&side, json + "\n"));
            if result.is_err() {
                let _ = fs::remove_file(path);
                let _ = fs::remove_file(&side);
            }
            result?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_metadata_header_and_rows() {
        let mut t = Table::new(vec!["a", "b", "label"]);
        t.meta("k_lambda", 1);
        t.meta_float("r_p", -0.1017457);
        t.push(vec![1.0.into(), Cell::Int(3), "edge".into()]);
        t.push(vec![f64::NAN.into(), true.into(), "low".into()]);
        let s = t.render();
        assert_eq!(
            s,
            "# k_lambda = 1\n# r_p = -1.01745700e-1\na,b,label\n1.00000000e0,3,edge\nnan,1,low\n"
        );
    }

    #[test]
    fn manifest_sits_next_to_output() {
        assert_eq!(manifest_path(Path::new("/tmp/x.csv")), PathBuf::from("/tmp/x.csv.manifest.json"));
    }
}
