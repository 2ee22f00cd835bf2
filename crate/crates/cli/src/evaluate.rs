//! Metric tables and profile tables.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sparsemoo::metrics::{
    build_reference_front, default_reference_point, delta_spread, gamma_spread, hypervolume_2d,
    log_rescale, performance_profiles, purity, Front, ProfileCurve,
};

use crate::error::{data_err, CliError, CliResult};
use crate::front_io::csv_io;

/// How objective values are preprocessed before spreads and hypervolume.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum MetricMode {
    /// Raw objective values.
    Quadratic,
    /// `log₁₀ f₂`, then both objectives rescaled to `[0, 1]` over all fronts.
    Logistic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Metric {
    Purity,
    Gamma,
    Delta,
    Hypervolume,
}

impl Metric {
    pub const ALL: [Metric; 4] = [Metric::Purity, Metric::Gamma, Metric::Delta, Metric::Hypervolume];

    pub fn name(self) -> &'static str {
        match self {
            Metric::Purity => "purity",
            Metric::Gamma => "gamma",
            Metric::Delta => "delta",
            Metric::Hypervolume => "hypervolume",
        }
    }

    pub fn higher_is_better(self) -> bool {
        matches!(self, Metric::Purity | Metric::Hypervolume)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MetricRow {
    pub problem: String,
    pub solver: String,
    /// Indexed like [`Metric::ALL`].
    pub values: [f64; 4],
}

#[derive(Clone, Debug, PartialEq)]
pub struct MetricReport {
    pub rows: Vec<MetricRow>,
    pub reference_size: usize,
    /// Hypervolume reference point, in the preprocessed space.
    pub ref_point: Vec<f64>,
}

/// All four metrics for each named front against `reference` (the union of
/// the fronts when `None`).
pub fn compute_metrics(
    problem: &str,
    fronts: &[(String, Front)],
    reference: Option<Front>,
    mode: MetricMode,
    ref_point: Option<Vec<f64>>,
) -> CliResult<MetricReport> {
    let raw: Vec<Front> = fronts.iter().map(|(_, f)| f.clone()).collect();
    let reference = match reference {
        Some(r) => r.nondominated(),
        None => build_reference_front(&raw)?,
    };
    if reference.is_empty() {
        return Err(CliError::Empty(format!("{problem}: reference front is empty")));
    }
    let m = reference.num_objectives();
    if raw.iter().any(|f| f.num_objectives().is_some_and(|k| Some(k) != m)) {
        return Err(data_err!("{problem}: fronts and reference have different numbers of objectives"));
    }
    if m != Some(2) {
        return Err(data_err!("{problem}: spreads and hypervolume need two objectives"));
    }
    let (scaled, scaled_ref) = match mode {
        MetricMode::Quadratic => (raw.clone(), reference.clone()),
        MetricMode::Logistic => {
            let mut all = raw.clone();
            all.push(reference.clone());
            let mut out = log_rescale(&all)?;
            let r = out.pop().expect("reference was pushed");
            (out, r)
        }
    };
    let ref_point = match ref_point {
        Some(p) if p.len() != 2 => return Err(CliError::Usage("reference point needs two values".into())),
        Some(p) => p,
        None => {
            let mut all = scaled.clone();
            all.push(scaled_ref.clone());
            default_reference_point(&all).expect("reference is nonempty")
        }
    };
    let mut rows = Vec::with_capacity(fronts.len());
    for (i, (name, front)) in fronts.iter().enumerate() {
        rows.push(MetricRow {
            problem: problem.to_string(),
            solver: name.clone(),
            values: [
                purity(front, &reference)?,
                gamma_spread(&scaled[i], &scaled_ref)?,
                delta_spread(&scaled[i], &scaled_ref)?,
                hypervolume_2d(&scaled[i], &ref_point)?,
            ],
        });
    }
    Ok(MetricReport {
        rows,
        reference_size: reference.len(),
        ref_point,
    })
}

pub fn write_metric_rows(path: &Path, rows: &[MetricRow]) -> CliResult<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| csv_io(path, e))?;
    let header = ["problem", "solver"].into_iter().chain(Metric::ALL.iter().map(|m| m.name()));
    w.write_record(header).map_err(|e| csv_io(path, e))?;
    for r in rows {
        let rec = [r.problem.clone(), r.solver.clone()]
            .into_iter()
            .chain(r.values.iter().map(|v| format!("{v:?}")));
        w.write_record(rec).map_err(|e| csv_io(path, e))?;
    }
    w.flush().map_err(|e| CliError::io(path, e))
}

pub fn read_metric_rows(path: &Path) -> CliResult<Vec<MetricRow>> {
    let mut r = csv::Reader::from_path(path).map_err(|e| csv_io(path, e))?;
    let header = r.headers().map_err(|e| csv_io(path, e))?.clone();
    let col = |name: &str| {
        header
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| data_err!("{}: missing column '{}'", path.display(), name))
    };
    let (pc, sc) = (col("problem")?, col("solver")?);
    let mc = Metric::ALL.map(|m| col(m.name()));
    let mut rows = Vec::new();
    for (k, rec) in r.records().enumerate() {
        let rec = rec.map_err(|e| csv_io(path, e))?;
        let mut values = [f64::NAN; 4];
        for (v, c) in values.iter_mut().zip(&mc) {
            let c = *c.as_ref().map_err(|e| data_err!("{}", e))?;
            *v = rec[c].trim().parse().map_err(|_| {
                data_err!("{}: non-numeric value '{}' at line {}, column '{}'", path.display(), &rec[c], k + 2, &header[c])
            })?;
        }
        rows.push(MetricRow { problem: rec[pc].to_string(), solver: rec[sc].to_string(), values });
    }
    Ok(rows)
}

pub type MetricProfile = (Metric, Vec<String>, Vec<ProfileCurve>);

/// One profile per metric. Problems and solvers keep first-appearance
/// order; a missing (problem, solver) pair is a failure.
pub fn profiles_from_rows(rows: &[MetricRow]) -> CliResult<Vec<MetricProfile>> {
    let mut problems: Vec<&str> = Vec::new();
    let mut solvers: Vec<&str> = Vec::new();
    for r in rows {
        if !problems.contains(&r.problem.as_str()) {
            problems.push(&r.problem);
        }
        if !solvers.contains(&r.solver.as_str()) {
            solvers.push(&r.solver);
        }
    }
    let mut out = Vec::new();
    for (k, metric) in Metric::ALL.into_iter().enumerate() {
        let mut table = vec![vec![None; solvers.len()]; problems.len()];
        for r in rows {
            let i = problems.iter().position(|p| *p == r.problem).expect("collected");
            let j = solvers.iter().position(|s| *s == r.solver).expect("collected");
            if table[i][j].is_some() {
                return Err(data_err!("duplicate row for problem '{}' and solver '{}'", r.problem, r.solver));
            }
            table[i][j] = Some(r.values[k]);
        }
        let curves = performance_profiles(&table, metric.higher_is_better())
            .map_err(|e| data_err!("{} profile: {}", metric.name(), e))?;
        out.push((metric, solvers.iter().map(|s| s.to_string()).collect(), curves));
    }
    Ok(out)
}

pub fn write_profile(path: &Path, names: &[String], curves: &[ProfileCurve]) -> CliResult<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| csv_io(path, e))?;
    w.write_record(["solver", "tau", "rho"]).map_err(|e| csv_io(path, e))?;
    for c in curves {
        for (t, r) in c.tau.iter().zip(&c.rho) {
            w.write_record([names[c.solver].clone(), format!("{t:?}"), format!("{r:?}")])
                .map_err(|e| csv_io(path, e))?;
        }
    }
    w.flush().map_err(|e| CliError::io(path, e))
}

