//! End-to-end front construction shared by the subcommands.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use sparsemoo::linalg::inf_dist;
use sparsemoo::sfsd::{
    archive_from_runs, sample_starts, sfsd_run, ArchiveEntry, InitStrategy, SfsdConfig, SfsdStop,
    DUPLICATE_TOL,
};
use sparsemoo::solvers::{mosd, Interrupt, SolverConfig, SolverRun, SolverStatus};
use sparsemoo::{filter_nondominated, project_sparse, MultiObjectiveProblem, SparseBudget, SupportSet};

use crate::error::{CliError, CliResult};

/// Multi-start settings.
#[derive(Clone, Debug)]
pub struct StartOptions {
    pub strategy: InitStrategy,
    /// Defaults to `2n`. Ignored by the scalarized strategy, which runs once
    /// from the origin over its whole weight grid.
    pub n_starts: Option<usize>,
    pub seed: u64,
    pub bounds: (f64, f64),
    pub solver: SolverConfig,
}

impl StartOptions {
    pub fn starts(&self, n: usize) -> CliResult<usize> {
        match self.n_starts {
            Some(0) => Err(CliError::Usage("--n-starts must be at least 1".into())),
            Some(k) => Ok(k),
            None => Ok(2 * n),
        }
    }
}

/// Rows of a front plus run statistics.
#[derive(Clone, Debug, PartialEq)]
pub struct FrontReport {
    pub rows: Vec<ArchiveEntry>,
    pub runs: usize,
    pub iterations: Vec<usize>,
    pub converged: usize,
    pub failed: usize,
    pub sweeps: Option<usize>,
    pub stop: Option<SfsdStop>,
}

/// Interrupt firing once `budget` has elapsed from now.
pub fn deadline(budget: Duration) -> Interrupt {
    let end = Instant::now() + budget;
    Interrupt::new(move || Instant::now() >= end)
}

/// Runs the strategy from every start in parallel; results keep start order.
pub fn multistart<P: MultiObjectiveProblem + ?Sized>(
    p: &P,
    s: SparseBudget,
    opts: &StartOptions,
) -> CliResult<Vec<SolverRun>> {
    let n_starts = opts.starts(p.dim())?;
    let starts = match opts.strategy {
        InitStrategy::Scalarized => vec![vec![0.0; p.dim()]],
        _ => sample_starts(p.dim(), n_starts, opts.seed, opts.bounds),
    };
    let per_start: Vec<Vec<SolverRun>> = starts
        .par_iter()
        .map(|x0| opts.strategy.solve(p, &project_sparse(x0, s), s, &opts.solver))
        .collect::<Result<_, _>>()?;
    Ok(per_start.into_iter().flatten().collect())
}

/// Nondominated rows across all keys, exact duplicates (points within the
/// archive duplicate tolerance) reduced to their first occurrence.
pub fn cross_filter(rows: Vec<ArchiveEntry>) -> Vec<ArchiveEntry> {
    let keep = filter_nondominated(&rows.iter().map(|r| r.f.as_slice()).collect::<Vec<_>>());
    let mut out: Vec<ArchiveEntry> = Vec::with_capacity(keep.len());
    let mut rows: Vec<Option<ArchiveEntry>> = rows.into_iter().map(Some).collect();
    for i in keep {
        let r = rows[i].take().expect("indices are distinct");
        if !out.iter().any(|o| inf_dist(&o.x, &r.x) <= DUPLICATE_TOL) {
            out.push(r);
        }
    }
    out
}

/// Multi-start solver, MOSD refinement of every result on its own support,
/// then the cross-point nondominance filter.
pub fn solve_front<P: MultiObjectiveProblem + ?Sized>(
    p: &P,
    s: SparseBudget,
    opts: &StartOptions,
) -> CliResult<FrontReport> {
    let runs = multistart(p, s, opts)?;
    let refined: Vec<SolverRun> = runs
        .into_par_iter()
        .map(|run| {
            let support = SupportSet::of(&run.x);
            if support.is_empty() {
                return Ok(run);
            }
            let r = mosd(p, &run.x, &support, opts.solver.eps, &opts.solver)?;
            Ok(SolverRun { x: r.x, iterations: run.iterations + r.iterations, status: run.status })
        })
        .collect::<Result<_, sparsemoo::Error>>()?;
    let mut failed = 0;
    let mut rows = Vec::with_capacity(refined.len());
    for run in &refined {
        let f = p.evaluate(&run.x);
        if f.iter().any(|v| !v.is_finite()) {
            failed += 1;
            continue;
        }
        rows.push(ArchiveEntry { support: SupportSet::of(&run.x), x: run.x.clone(), f });
    }
    Ok(FrontReport {
        rows: cross_filter(rows),
        runs: refined.len(),
        iterations: refined.iter().map(|r| r.iterations).collect(),
        converged: refined.iter().filter(|r| r.status == SolverStatus::Converged).count(),
        failed,
        sweeps: None,
        stop: None,
    })
}

/// Phase one with the given strategy, `budget` SFSD sweeps, then the
/// cross-key filter. An empty phase-one archive is an [`CliError::Empty`].
pub fn sfsd_front<P: MultiObjectiveProblem + ?Sized>(
    p: &P,
    s: SparseBudget,
    opts: &StartOptions,
    sfsd: &SfsdConfig,
    budget: usize,
) -> CliResult<FrontReport> {
    let runs = multistart(p, s, opts)?;
    let converged = runs.iter().filter(|r| r.status == SolverStatus::Converged).count();
    let n_runs = runs.len();
    let init = archive_from_runs(p, s, runs, &opts.solver)?;
    for note in &init.notes {
        log::warn!("{note}");
    }
    if init.archive.is_empty() {
        return Err(CliError::Empty(format!(
            "initialization produced no usable point ({} of {} runs failed)",
            init.failed, n_runs
        )));
    }
    log::info!(
        "phase one: {} entries over {} supports from {} runs",
        init.archive.len(),
        init.archive.num_keys(),
        n_runs
    );
    let out = sfsd_run(p, init.archive, s.get(), sfsd, budget)?;
    log::info!("phase two: {} entries after {} sweeps ({:?})", out.archive.len(), out.sweeps, out.stop);
    Ok(FrontReport {
        rows: cross_filter(out.archive.into_entries().collect()),
        runs: n_runs,
        iterations: init.iterations,
        converged,
        failed: init.failed,
        sweeps: Some(out.sweeps),
        stop: Some(out.stop),
    })
}
