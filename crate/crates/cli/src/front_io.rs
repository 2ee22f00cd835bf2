//! Front CSV files (`f1..fm, support, x_1..x_n`) and their JSON sidecars.

use std::fs;
use std::path::{Path, PathBuf};

use sparsemoo::metrics::{Front, FrontRow};
use sparsemoo::sfsd::ArchiveEntry;
use sparsemoo::SupportSet;

use crate::error::{data_err, CliError, CliResult};

/// `front.csv` → `front.meta.json`.
pub fn sidecar_path(path: &Path) -> PathBuf {
    path.with_extension("meta.json")
}

/// Writes rows with shortest round-trip float formatting, so equal inputs
/// give byte-identical files.
pub fn write_front(path: &Path, rows: &[ArchiveEntry]) -> CliResult<()> {
    let m = rows.first().map_or(2, |r| r.f.len());
    let n = rows.first().map_or(0, |r| r.x.len());
    let mut w = csv::Writer::from_path(path).map_err(|e| csv_io(path, e))?;
    let header: Vec<String> = (1..=m)
        .map(|j| format!("f{j}"))
        .chain(std::iter::once("support".to_string()))
        .chain((1..=n).map(|i| format!("x_{i}")))
        .collect();
    w.write_record(&header).map_err(|e| csv_io(path, e))?;
    for r in rows {
        let record: Vec<String> = r
            .f
            .iter()
            .map(|v| format!("{v:?}"))
            .chain(std::iter::once(r.support.to_one_based(";")))
            .chain(r.x.iter().map(|v| format!("{v:?}")))
            .collect();
        w.write_record(&record).map_err(|e| csv_io(path, e))?;
    }
    w.flush().map_err(|e| CliError::io(path, e))
}

/// Reads a front CSV. The `support` and `x_*` columns are optional.
pub fn read_front(path: &Path) -> CliResult<Front> {
    let mut r = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| csv_io(path, e))?;
    let header = r.headers().map_err(|e| csv_io(path, e))?.clone();
    let f_cols: Vec<usize> = (1..)
        .map_while(|j| header.iter().position(|h| h == format!("f{j}")))
        .collect();
    if f_cols.is_empty() {
        return Err(data_err!("{}: no f1 column", path.display()));
    }
    let x_cols: Vec<usize> = (1..)
        .map_while(|i| header.iter().position(|h| h == format!("x_{i}")))
        .collect();
    let support_col = header.iter().position(|h| h == "support");
    let mut rows = Vec::new();
    for (k, rec) in r.records().enumerate() {
        let rec = rec.map_err(|e| csv_io(path, e))?;
        let line = k + 2;
        let num = |c: usize| -> CliResult<f64> {
            rec[c].parse().map_err(|_| {
                data_err!("{}: non-numeric value '{}' at line {}, column '{}'", path.display(), &rec[c], line, &header[c])
            })
        };
        let f = f_cols.iter().map(|&c| num(c)).collect::<CliResult<Vec<_>>>()?;
        let x = if x_cols.is_empty() {
            None
        } else {
            Some(x_cols.iter().map(|&c| num(c)).collect::<CliResult<Vec<_>>>()?)
        };
        let support = match (support_col, &x) {
            (Some(c), Some(x)) => Some(
                SupportSet::parse_one_based(&rec[c], ';', x.len())
                    .map_err(|e| data_err!("{}: line {}: {}", path.display(), line, e))?,
            ),
            _ => None,
        };
        rows.push(FrontRow { f, x, support });
    }
    Front::new(rows).map_err(|e| data_err!("{}: {}", path.display(), e))
}

pub fn write_json(path: &Path, value: &serde_json::Value) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value).expect("json value serializes");
    text.push('\n');
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

pub(crate) fn csv_io(path: &Path, e: csv::Error) -> CliError {
    let msg = e.to_string();
    match e.into_kind() {
        csv::ErrorKind::Io(io) => CliError::io(path, io),
        _ => data_err!("{}: {}", path.display(), msg),
    }
}
