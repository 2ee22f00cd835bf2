//! Experiment manifests for `reproduce`.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sparsemoo::sfsd::InitStrategy;

use crate::error::{data_err, CliError, CliResult};
use crate::evaluate::MetricMode;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentManifest {
    /// Base seed; every (instance, solver, run) derives its own from it.
    pub seed: u64,
    /// Instance files, relative to the manifest's directory.
    pub instances: Vec<PathBuf>,
    pub solvers: Vec<SolverSpec>,
    /// Seeded runs per (instance, solver); best and worst are reported.
    #[serde(default = "default_runs")]
    pub runs: usize,
    /// Starts per run, `2n` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_starts: Option<usize>,
    /// Output directory, relative to the manifest's directory.
    pub output_dir: PathBuf,
    /// Metric preprocessing; follows the instance type when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<MetricMode>,
}

fn default_runs() -> usize {
    5
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverSpec {
    pub name: String,
    #[serde(flatten)]
    pub method: Method,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_iter: Option<usize>,
    /// Wall-clock limit per run in seconds, split evenly between phases.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wallclock: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Method {
    /// Multi-start solver with refinement.
    Solve { strategy: String },
    /// Phase one with `init`, then `budget` SFSD sweeps.
    Front { init: String, budget: usize },
}

impl Method {
    pub fn strategy(&self) -> CliResult<InitStrategy> {
        let name = match self {
            Method::Solve { strategy } => strategy,
            Method::Front { init, .. } => init,
        };
        Ok(name.parse()?)
    }
}

impl ExperimentManifest {
    pub fn read(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| data_err!("{}: {}", path.display(), e))
    }

    /// Checks names, strategies and that every instance file exists.
    pub fn validate(&self, base: &Path) -> CliResult<()> {
        if self.runs == 0 {
            return Err(CliError::Usage("manifest: runs must be at least 1".into()));
        }
        if self.n_starts == Some(0) {
            return Err(CliError::Usage("manifest: n_starts must be at least 1".into()));
        }
        if self.instances.is_empty() || self.solvers.is_empty() {
            return Err(CliError::Usage("manifest needs at least one instance and one solver".into()));
        }
        let mut names: Vec<&str> = Vec::new();
        for s in &self.solvers {
            s.method.strategy()?;
            if s.name.is_empty() || s.name.contains(['/', '\\']) || names.contains(&s.name.as_str()) {
                return Err(CliError::Usage(format!("manifest: bad or repeated solver name '{}'", s.name)));
            }
            names.push(&s.name);
        }
        let mut stems: Vec<String> = Vec::new();
        for i in &self.instances {
            let path = base.join(i);
            if !path.is_file() {
                return Err(CliError::io(
                    path,
                    std::io::Error::new(std::io::ErrorKind::NotFound, "instance file not found"),
                ));
            }
            let stem = instance_id(i);
            if stems.contains(&stem) {
                return Err(CliError::Usage(format!("manifest: repeated instance name '{stem}'")));
            }
            stems.push(stem);
        }
        Ok(())
    }
}

/// File stem used to name an instance in outputs.
pub fn instance_id(path: &Path) -> String {
    path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned())
}
