//! Headerless matrix CSV: one row per line, comma-separated decimal floats,
//! UTF-8 with LF line endings. Values are written with 17 significant
//! digits so files round-trip `f64` exactly.

use std::path::Path;

use opnorm::DenseMatrix;

use crate::CliError;

pub fn read_matrix(path: &Path) -> Result<DenseMatrix, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
    parse_matrix(&text).map_err(|msg| CliError::input(format!("{}: {msg}", path.display())))
}

pub fn parse_matrix(text: &str) -> Result<DenseMatrix, String> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let mut row = Vec::new();
        for (col, field) in line.split(',').enumerate() {
            let value: f64 = field.trim().parse().map_err(|_| {
                format!(
                    "line {}, column {}: unparseable number {:?}",
                    lineno + 1,
                    col + 1,
                    field.trim()
                )
            })?;
            if !value.is_finite() {
                return Err(format!(
                    "line {}, column {}: entries must be finite",
                    lineno + 1,
                    col + 1
                ));
            }
            row.push(value);
        }
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(format!(
                    "line {}: expected {} fields, found {}",
                    lineno + 1,
                    first.len(),
                    row.len()
                ));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err("no rows".into());
    }
    DenseMatrix::from_rows(&rows).map_err(|e| e.to_string())
}

pub fn render_matrix(a: &DenseMatrix) -> String {
    let mut out = String::new();
    for i in 0..a.rows() {
        let line: Vec<String> = a.row(i).iter().map(|v| crate::canonical::fmt_f64(*v)).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}
