//! Instance files: JSON descriptions of quadratic or logistic problems.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sparsemoo::problems::{LogisticProblem, QuadraticInstance, QuadraticObjective, QuadraticProblem};
use sparsemoo::solvers::SolverConfig;
use sparsemoo::{MultiObjectiveProblem, SparseBudget};

use crate::dataset::load_dataset;
use crate::error::{data_err, CliError, CliResult};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum InstanceFile {
    Quadratic(QuadraticSpec),
    Logistic(LogisticSpec),
}

/// `f_j(x) = ½xᵀQ_jx − c_jᵀx + offset_j` with `Q_j` given as rows.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadraticSpec {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub s: usize,
    #[serde(rename = "Q1")]
    pub q1: Vec<Vec<f64>>,
    #[serde(rename = "Q2")]
    pub q2: Vec<Vec<f64>>,
    pub c1: Vec<f64>,
    pub c2: Vec<f64>,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub offset1: f64,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub offset2: f64,
    /// Gradient Lipschitz constants; computed from the matrices when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lipschitz: Option<Vec<f64>>,
}

fn is_zero(v: &f64) -> bool {
    *v == 0.0
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LogisticSpec {
    /// CSV path, relative to the instance file's directory.
    pub dataset: PathBuf,
    pub label_column: String,
    pub s: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProblemKind {
    Quadratic,
    Logistic,
}

impl ProblemKind {
    /// Box the random starts are drawn from.
    pub fn start_box(self) -> (f64, f64) {
        match self {
            ProblemKind::Quadratic => (-2.0, 2.0),
            ProblemKind::Logistic => (0.0, 1.0),
        }
    }

    pub fn solver_config(self, max_lipschitz: f64) -> SolverConfig {
        match self {
            ProblemKind::Quadratic => SolverConfig::quadratic(max_lipschitz),
            ProblemKind::Logistic => SolverConfig::logistic(max_lipschitz),
        }
    }
}

pub type DynProblem = Box<dyn MultiObjectiveProblem + Send + Sync>;

/// A problem ready to solve.
pub struct Instance {
    pub kind: ProblemKind,
    pub problem: DynProblem,
    pub s: SparseBudget,
}

impl std::fmt::Debug for Instance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Instance")
            .field("kind", &self.kind)
            .field("n", &self.problem.dim())
            .field("s", &self.s.get())
            .finish()
    }
}

impl Instance {
    pub fn solver_config(&self) -> SolverConfig {
        self.kind.solver_config(self.problem.max_lipschitz())
    }
}

impl QuadraticSpec {
    pub fn from_generated(inst: &QuadraticInstance, s: usize) -> Self {
        let n = inst.n;
        let objs = inst.problem.objectives();
        let rows = |q: &[f64]| q.chunks(n).map(<[f64]>::to_vec).collect();
        Self {
            n,
            kappa: Some(inst.kappa),
            seed: Some(inst.seed),
            s,
            q1: rows(&objs[0].q),
            q2: rows(&objs[1].q),
            c1: objs[0].c.clone(),
            c2: objs[1].c.clone(),
            offset1: objs[0].offset,
            offset2: objs[1].offset,
            lipschitz: Some(inst.problem.lipschitz()),
        }
    }

    pub fn from_problem(p: &QuadraticProblem, s: usize) -> CliResult<Self> {
        let n = p.dim();
        let objs = p.objectives();
        if objs.len() != 2 {
            return Err(CliError::Usage("instance files hold bi-objective problems".into()));
        }
        let rows = |q: &[f64]| q.chunks(n).map(<[f64]>::to_vec).collect();
        Ok(Self {
            n,
            kappa: None,
            seed: None,
            s,
            q1: rows(&objs[0].q),
            q2: rows(&objs[1].q),
            c1: objs[0].c.clone(),
            c2: objs[1].c.clone(),
            offset1: objs[0].offset,
            offset2: objs[1].offset,
            lipschitz: Some(p.lipschitz()),
        })
    }

    pub fn to_problem(&self) -> CliResult<QuadraticProblem> {
        let n = self.n;
        let flat = |name: &str, q: &[Vec<f64>]| -> CliResult<Vec<f64>> {
            if q.len() != n || q.iter().any(|r| r.len() != n) {
                return Err(data_err!("{} must be {}x{}", name, n, n));
            }
            for (i, row) in q.iter().enumerate() {
                for (j, &v) in row.iter().enumerate().take(i) {
                    if v != q[j][i] {
                        return Err(data_err!("{} is not symmetric at ({}, {})", name, i + 1, j + 1));
                    }
                }
            }
            Ok(q.concat())
        };
        for (name, c) in [("c1", &self.c1), ("c2", &self.c2)] {
            if c.len() != n {
                return Err(data_err!("{} must have length {}", name, n));
            }
        }
        let objectives = vec![
            QuadraticObjective { q: flat("Q1", &self.q1)?, c: self.c1.clone(), offset: self.offset1 },
            QuadraticObjective { q: flat("Q2", &self.q2)?, c: self.c2.clone(), offset: self.offset2 },
        ];
        Ok(QuadraticProblem::new(n, objectives, self.lipschitz.clone())?)
    }
}

impl InstanceFile {
    pub fn s(&self) -> usize {
        match self {
            InstanceFile::Quadratic(q) => q.s,
            InstanceFile::Logistic(l) => l.s,
        }
    }

    pub fn read(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| data_err!("{}: {}", path.display(), e))
    }

    /// Pretty JSON with a trailing newline.
    pub fn write(&self, path: &Path) -> CliResult<()> {
        let mut text = serde_json::to_string_pretty(self).expect("instance serializes");
        text.push('\n');
        fs::write(path, text).map_err(|e| CliError::io(path, e))
    }

    /// Builds the problem; dataset paths resolve against `base_dir`.
    pub fn load(&self, base_dir: &Path) -> CliResult<Instance> {
        let (kind, problem): (ProblemKind, DynProblem) = match self {
            InstanceFile::Quadratic(q) => (ProblemKind::Quadratic, Box::new(q.to_problem()?)),
            InstanceFile::Logistic(l) => {
                let ds = load_dataset(&base_dir.join(&l.dataset), &l.label_column)?;
                let cols = ds.cols();
                (
                    ProblemKind::Logistic,
                    Box::new(LogisticProblem::new(ds.samples, ds.rows, cols, ds.labels)?),
                )
            }
        };
        let s = SparseBudget::new(self.s(), problem.dim())?;
        Ok(Instance { kind, problem, s })
    }
}

/// Reads and loads an instance file.
pub fn load_instance(path: &Path) -> CliResult<Instance> {
    let base = path.parent().unwrap_or(Path::new("."));
    InstanceFile::read(path)?.load(base)
}
