//! CSV input and output.
//!
//! Data files have a header row, `n` input columns and (for training) one target column.
//! Output files are UTF-8 with LF line endings; floats are written in shortest round-trip form.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use ddm_core::{Dataset, Normalization};

use crate::error::CliError;

/// Numeric table read from a CSV file.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    /// Column names from the header row.
    pub header: Vec<String>,
    /// Row-major values.
    pub values: Vec<f64>,
}

impl Table {
    /// Number of columns.
    pub fn width(&self) -> usize {
        self.header.len()
    }

    /// Number of data rows.
    pub fn len(&self) -> usize {
        self.values.len() / self.width()
    }

    /// `true` if there are no data rows.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Row-major values of the first `cols` columns.
    pub fn leading_columns(&self, cols: usize) -> Vec<f64> {
        self.values
            .chunks_exact(self.width())
            .flat_map(|r| r[..cols].iter().copied())
            .collect()
    }

    /// Values of column `col`.
    pub fn column(&self, col: usize) -> Vec<f64> {
        self.values
            .chunks_exact(self.width())
            .map(|r| r[col])
            .collect()
    }
}

/// Reads a headed numeric CSV file.
pub fn read_table(path: &Path) -> Result<Table, CliError> {
    let input_err = |line: u64, message: String| CliError::Input {
        path: path.to_path_buf(),
        line,
        message,
    };
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| match e.into_kind() {
            csv::ErrorKind::Io(io) => CliError::io(path, io),
            other => input_err(1, format!("{other:?}")),
        })?;
    let header: Vec<String> = reader
        .headers()
        .map_err(|e| input_err(1, e.to_string()))?
        .iter()
        .map(str::to_string)
        .collect();
    if header.is_empty() || header.iter().all(String::is_empty) {
        return Err(input_err(1, "missing header row".into()));
    }
    let mut values = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            match e.kind() {
                csv::ErrorKind::UnequalLengths {
                    expected_len, len, ..
                } => input_err(
                    line,
                    format!("expected {expected_len} columns, found {len}"),
                ),
                _ => input_err(line, e.to_string()),
            }
        })?;
        let line = record.position().map_or(0, |p| p.line());
        for (col, field) in record.iter().enumerate() {
            let v: f64 = field.parse().map_err(|_| {
                input_err(line, format!("column {} (`{}`): `{field}` is not a number", col + 1, header[col]))
            })?;
            if !v.is_finite() {
                return Err(input_err(line, format!("column {}: non-finite value `{field}`", col + 1)));
            }
            values.push(v);
        }
    }
    Ok(Table { header, values })
}

/// Training data read from CSV, normalized to the unit cube (targets to `[0, 1]`).
pub fn training_dataset(path: &Path) -> Result<Dataset, CliError> {
    let table = read_table(path)?;
    if table.width() < 2 {
        return Err(CliError::Input {
            path: path.to_path_buf(),
            line: 1,
            message: format!(
                "expected n input columns followed by one target column, found {} column(s)",
                table.width()
            ),
        });
    }
    if table.is_empty() {
        return Err(CliError::Input {
            path: path.to_path_buf(),
            line: 2,
            message: "no data rows".into(),
        });
    }
    let dim = table.width() - 1;
    let raw_inputs = table.leading_columns(dim);
    let raw_targets = table.column(dim);
    let norm = Normalization::fit(dim, &raw_inputs, &raw_targets, (0.0, 1.0));
    let inputs: Vec<f64> = raw_inputs
        .chunks_exact(dim)
        .flat_map(|x| norm.normalize_input(x))
        .collect();
    let targets = raw_targets.iter().map(|&y| norm.normalize_target(y)).collect();
    Ok(Dataset::with_normalization(inputs, targets, norm)?)
}

/// Formats a float in shortest round-trip form.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:?}")
}

/// Writes `header` and `rows` as CSV.
pub fn write_csv(path: &Path, header: &[String], rows: &[Vec<f64>]) -> Result<(), CliError> {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        for (i, v) in row.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            write!(out, "{v:?}").unwrap();
        }
        out.push('\n');
    }
    write_text(path, &out)
}

/// Writes a text file.
pub fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn file(contents: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        f
    }

    #[test]
    fn reads_and_normalizes() {
        let f = file("x1,x2,y\n0,10,1\n2,20,3\n1,15,2\n");
        let d = training_dataset(f.path()).unwrap();
        assert_eq!(d.dim(), 2);
        assert_eq!(d.input(2), &[0.5, 0.5]);
        assert_eq!(d.targets(), &[0.0, 1.0, 0.5]);
    }

    #[test]
    fn malformed_row_reports_line() {
        let f = file("x,y\n0,1\n0.5\n1,2\n");
        let err = training_dataset(f.path()).unwrap_err();
        assert!(matches!(err, CliError::Input { line: 3, .. }), "{err}");
        let f = file("x,y\n0,1\n1,abc\n");
        let err = training_dataset(f.path()).unwrap_err();
        assert!(matches!(err, CliError::Input { line: 3, .. }), "{err}");
    }

    #[test]
    fn single_column_is_rejected() {
        let f = file("x\n0\n1\n");
        let err = training_dataset(f.path()).unwrap_err();
        assert!(err.to_string().contains("found 1 column"), "{err}");
        assert_eq!(err.exit_code(), 2);
    }
}
