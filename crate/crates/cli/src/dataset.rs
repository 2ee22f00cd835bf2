//! CSV dataset loading for the logistic regression problems.

use std::path::Path;

use crate::error::{data_err, CliResult};
use crate::front_io::csv_io;

/// Standardized design matrix with ±1 labels.
#[derive(Clone, Debug, PartialEq)]
pub struct Dataset {
    /// Row-major `rows × features`.
    pub samples: Vec<f64>,
    pub rows: usize,
    pub features: Vec<String>,
    pub labels: Vec<f64>,
    /// Rows dropped because a cell was empty.
    pub dropped_rows: usize,
    /// Features with zero variance, mapped to all zeros.
    pub constant_columns: Vec<String>,
}

impl Dataset {
    pub fn cols(&self) -> usize {
        self.features.len()
    }
}

/// Reads a headed numeric CSV, drops rows with an empty cell, maps labels
/// `{0, 1}` or `{−1, 1}` to `±1` and standardizes every feature column to
/// mean 0 and population standard deviation 1.
pub fn load_dataset(path: &Path, label_column: &str) -> CliResult<Dataset> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| csv_io(path, e))?;
    let header = reader.headers().map_err(|e| csv_io(path, e))?.clone();
    let label_idx = header
        .iter()
        .position(|h| h == label_column)
        .ok_or_else(|| data_err!("{}: no column named '{}'", path.display(), label_column))?;
    let features: Vec<String> = header
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != label_idx)
        .map(|(_, h)| h.to_string())
        .collect();
    if features.is_empty() {
        return Err(data_err!("{}: no feature columns", path.display()));
    }
    let mut samples = Vec::new();
    let mut labels = Vec::new();
    let mut dropped_rows = 0;
    for (r, record) in reader.records().enumerate() {
        let record = record.map_err(|e| csv_io(path, e))?;
        let line = r + 2;
        if record.iter().any(str::is_empty) {
            dropped_rows += 1;
            continue;
        }
        let mut row = Vec::with_capacity(features.len());
        for (c, cell) in record.iter().enumerate() {
            let v: f64 = cell.parse().map_err(|_| {
                data_err!(
                    "{}: non-numeric value '{}' at line {}, column '{}'",
                    path.display(),
                    cell,
                    line,
                    &header[c]
                )
            })?;
            if c == label_idx {
                labels.push(match v {
                    1.0 => 1.0,
                    0.0 | -1.0 => -1.0,
                    _ => {
                        return Err(data_err!(
                            "{}: label {} at line {} is not in {{0, 1}} or {{-1, 1}}",
                            path.display(),
                            cell,
                            line
                        ))
                    }
                });
            } else {
                row.push(v);
            }
        }
        samples.extend(row);
    }
    if dropped_rows > 0 {
        log::info!("{}: dropped {} rows with missing values", path.display(), dropped_rows);
    }
    let rows = labels.len();
    if rows == 0 {
        return Err(data_err!("{}: no complete rows", path.display()));
    }
    let cols = features.len();
    let mut constant_columns = Vec::new();
    for c in 0..cols {
        let mean = (0..rows).map(|r| samples[r * cols + c]).sum::<f64>() / rows as f64;
        let var = (0..rows)
            .map(|r| (samples[r * cols + c] - mean).powi(2))
            .sum::<f64>()
            / rows as f64;
        let sd = var.sqrt();
        if sd == 0.0 {
            log::warn!("{}: column '{}' is constant; standardized to zeros", path.display(), features[c]);
            constant_columns.push(features[c].clone());
        }
        for r in 0..rows {
            let v = &mut samples[r * cols + c];
            *v = if sd > 0.0 { (*v - mean) / sd } else { 0.0 };
        }
    }
    Ok(Dataset {
        samples,
        rows,
        features,
        labels,
        dropped_rows,
        constant_columns,
    })
}
