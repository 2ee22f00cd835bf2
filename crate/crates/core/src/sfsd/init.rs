use alloc::string::String;
use alloc::vec::Vec;
use core::str::FromStr;

use rand::Rng as _;

use super::{ArchiveEntry, ParetoArchive};
use crate::directions::feasible_with_gradients;
use crate::error::usage;
use crate::solvers::descent::armijo_from;
use crate::solvers::{lambda_grid, mohyb, moiht, mospd, scalarized_iht, SolverConfig, SolverRun};
use crate::{project_sparse, rng, Error, MultiObjectiveProblem, Result, SparseBudget, SupportSet};

/// Single-point solver used to seed the archives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InitStrategy {
    Moiht,
    Mospd,
    Mohyb,
    /// Hard thresholding on `f₁ + λf₂` over the `2n` weights of
    /// [`lambda_grid`], once, from the origin.
    Scalarized,
}

impl InitStrategy {
    pub const ALL: [InitStrategy; 4] = [
        InitStrategy::Moiht,
        InitStrategy::Mospd,
        InitStrategy::Mohyb,
        InitStrategy::Scalarized,
    ];

    pub fn name(self) -> &'static str {
        match self {
            InitStrategy::Moiht => "moiht",
            InitStrategy::Mospd => "mospd",
            InitStrategy::Mohyb => "mohyb",
            InitStrategy::Scalarized => "scalarized",
        }
    }

    /// Runs the solver from `x0`; `Scalarized` ignores `x0`.
    pub fn solve<P: MultiObjectiveProblem + ?Sized>(
        self,
        p: &P,
        x0: &[f64],
        s: SparseBudget,
        cfg: &SolverConfig,
    ) -> Result<Vec<SolverRun>> {
        Ok(match self {
            InitStrategy::Moiht => {
                let (x, trace) = moiht(p, x0, s, cfg)?;
                alloc::vec![SolverRun { x, iterations: trace.steps(), status: trace.status }]
            }
            InitStrategy::Mospd => alloc::vec![mospd(p, x0, s, cfg)?],
            InitStrategy::Mohyb => alloc::vec![mohyb(p, x0, s, cfg)?],
            InitStrategy::Scalarized => {
                let origin = alloc::vec![0.0; p.dim()];
                scalarized_iht(p, s, &lambda_grid(p.dim()), &origin, cfg)?
            }
        })
    }
}

impl FromStr for InitStrategy {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|s| s.name().eq_ignore_ascii_case(text))
            .ok_or_else(|| {
                let names: Vec<&str> = Self::ALL.iter().map(|s| s.name()).collect();
                usage!("unknown strategy '{}' (expected one of {})", text, names.join(", "))
            })
    }
}

impl core::fmt::Display for InitStrategy {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.name())
    }
}

/// `n_starts` points drawn uniformly from `[lo, hi)ⁿ` on ChaCha8 stream 1
/// of `seed`, coordinates in order. Not yet projected onto `Ω`.
pub fn sample_starts(n: usize, n_starts: usize, seed: u64, bounds: (f64, f64)) -> Vec<Vec<f64>> {
    let mut rng = rng::stream(seed, 1);
    let (lo, hi) = bounds;
    (0..n_starts)
        .map(|_| (0..n).map(|_| lo + (hi - lo) * rng.random::<f64>()).collect())
        .collect()
}

/// Ties `x` to a super support.
///
/// A point with `s` nonzeros has exactly one. Otherwise, while `x` is not
/// Pareto-stationary (`θ(x) < −eps`), one Armijo step is taken along the
/// steepest feasible direction, which may fill the support. A stationary
/// point with a short support is completed with the smallest free indices.
/// If the line search fails the support attaining `θ(x)` is used.
pub fn assign_super_support<P: MultiObjectiveProblem + ?Sized>(
    p: &P,
    x: &[f64],
    s: SparseBudget,
    eps: f64,
    cfg: &SolverConfig,
) -> Result<(Vec<f64>, SupportSet)> {
    let mut x = x.to_vec();
    let all: Vec<usize> = (0..p.num_objectives()).collect();
    let mut support = SupportSet::of(&x);
    for _ in 0..cfg.max_iter {
        support = SupportSet::of(&x);
        if support.len() == s.get() {
            break;
        }
        let sol = feasible_with_gradients(&p.gradients(&x), &x, s)?;
        if !(sol.theta < -eps) {
            let mut idx: Vec<usize> = support.indices().to_vec();
            idx.extend(support.complement().indices().iter().take(s.get() - support.len()));
            support = SupportSet::new(idx, x.len())?;
            break;
        }
        let alpha = armijo_from(p, &x, &p.evaluate(&x), &sol.d, sol.theta, &all, &cfg.armijo);
        support = sol.support;
        if alpha == 0.0 {
            break;
        }
        x = crate::linalg::add_scaled(&x, alpha, &sol.d);
    }
    if support.len() != s.get() {
        // Budget ran out mid-way: fall back to the completion rule.
        let mut idx: Vec<usize> = SupportSet::of(&x).indices().to_vec();
        let free = SupportSet::new(idx.clone(), x.len())?.complement();
        idx.extend(free.indices().iter().take(s.get() - idx.len()));
        support = SupportSet::new(idx, x.len())?;
    }
    for (i, v) in x.iter_mut().enumerate() {
        if !support.contains(i) {
            *v = 0.0;
        }
    }
    Ok((x, support))
}

#[derive(Clone, Debug, PartialEq)]
pub struct InitOutcome {
    pub archive: ParetoArchive,
    /// Solver iterations per run, in run order.
    pub iterations: Vec<usize>,
    /// Runs whose result had non-finite objective values.
    pub failed: usize,
    pub notes: Vec<String>,
}

/// Phase one: multi-start solver runs, super-support assignment and
/// per-key nondominance filtering.
///
/// Starts come from [`sample_starts`] and are projected onto `Ω`. The
/// scalarized strategy is deterministic and runs once regardless of
/// `n_starts`.
pub fn initialize<P: MultiObjectiveProblem + ?Sized>(
    p: &P,
    s: SparseBudget,
    strategy: InitStrategy,
    n_starts: usize,
    seed: u64,
    bounds: (f64, f64),
    cfg: &SolverConfig,
) -> Result<InitOutcome> {
    if n_starts == 0 {
        return Err(usage!("at least one start is required"));
    }
    if !(bounds.0 < bounds.1) {
        return Err(usage!("empty sampling box [{}, {}]", bounds.0, bounds.1));
    }
    let starts = match strategy {
        InitStrategy::Scalarized => alloc::vec![alloc::vec![0.0; p.dim()]],
        _ => sample_starts(p.dim(), n_starts, seed, bounds),
    };
    let mut runs = Vec::new();
    for x0 in &starts {
        runs.extend(strategy.solve(p, &project_sparse(x0, s), s, cfg)?);
    }
    archive_from_runs(p, s, runs, cfg)
}

/// Builds a phase-one archive from finished solver runs (super-support
/// assignment and per-key filtering only).
pub fn archive_from_runs<P: MultiObjectiveProblem + ?Sized>(
    p: &P,
    s: SparseBudget,
    runs: Vec<SolverRun>,
    cfg: &SolverConfig,
) -> Result<InitOutcome> {
    let mut archive = ParetoArchive::new();
    let mut iterations = Vec::with_capacity(runs.len());
    let mut failed = 0;
    let mut notes = Vec::new();
    for run in runs {
        iterations.push(run.iterations);
        let f = p.evaluate(&run.x);
        if f.iter().any(|v| !v.is_finite()) {
            failed += 1;
            continue;
        }
        let (x, support) = assign_super_support(p, &run.x, s, cfg.eps, cfg)?;
        let f = p.evaluate(&x);
        archive.insert(ArchiveEntry { x, support, f });
    }
    if failed > 0 {
        notes.push(alloc::format!("{} runs produced non-finite objective values", failed));
    }
    Ok(InitOutcome {
        archive,
        iterations,
        failed,
        notes,
    })
}
