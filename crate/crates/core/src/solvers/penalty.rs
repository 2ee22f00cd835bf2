use alloc::vec::Vec;

use super::descent::mosd_unchecked;
use super::{moiht, SolverConfig, SolverRun, SolverStatus};
use crate::error::{domain, usage};
use crate::linalg::{dist, norm_sq};
use crate::{project_sparse, MultiObjectiveProblem, Result, SparseBudget, SupportSet};

/// `f_j(x) + (τ/2)‖x − y‖²` for every objective of the inner problem.
#[derive(Clone, Debug)]
pub struct Penalized<'a, P: ?Sized> {
    inner: &'a P,
    anchor: Vec<f64>,
    tau: f64,
}

impl<'a, P: MultiObjectiveProblem + ?Sized> Penalized<'a, P> {
    pub fn new(inner: &'a P, anchor: Vec<f64>, tau: f64) -> Self {
        Self { inner, anchor, tau }
    }
}

impl<P: MultiObjectiveProblem + ?Sized> MultiObjectiveProblem for Penalized<'_, P> {
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn num_objectives(&self) -> usize {
        self.inner.num_objectives()
    }

    fn evaluate(&self, x: &[f64]) -> Vec<f64> {
        let diff: Vec<f64> = x.iter().zip(&self.anchor).map(|(a, b)| a - b).collect();
        let pen = 0.5 * self.tau * norm_sq(&diff);
        self.inner.evaluate(x).into_iter().map(|f| f + pen).collect()
    }

    fn gradients(&self, x: &[f64]) -> Vec<Vec<f64>> {
        let mut g = self.inner.gradients(x);
        for gj in g.iter_mut() {
            for ((gi, xi), yi) in gj.iter_mut().zip(x).zip(&self.anchor) {
                *gi += self.tau * (xi - yi);
            }
        }
        g
    }

    fn lipschitz(&self) -> Vec<f64> {
        self.inner.lipschitz().into_iter().map(|l| l + self.tau).collect()
    }
}

/// Sparse penalty decomposition.
///
/// For each `τ_k`, alternates a full-space steepest descent on the
/// penalized objectives (to tolerance `ε_k`, warm-started from the current
/// `x`) with `y = Π_Ω(x)`, until `x` moves by less than `ε_k`. Stops once
/// `‖x − y‖ ≤ xy_tol` and returns `y`.
pub fn mospd<P: MultiObjectiveProblem + ?Sized>(
    p: &P,
    x0: &[f64],
    s: SparseBudget,
    cfg: &SolverConfig,
) -> Result<SolverRun> {
    cfg.validate()?;
    if x0.len() != p.dim() {
        return Err(usage!("start point has length {}, dimension is {}", x0.len(), p.dim()));
    }
    if !s.admits(x0) {
        return Err(domain!("start point violates the sparsity bound s={}", s.get()));
    }
    let pen = &cfg.penalty;
    let full = SupportSet::full(p.dim());
    let mut x = x0.to_vec();
    let mut y = x0.to_vec();
    let mut tau = pen.tau0;
    let mut eps = pen.eps0;
    let mut iterations = 0;
    let mut status = SolverStatus::BudgetExhausted;
    'outer: for _ in 0..pen.max_outer {
        for _ in 0..pen.max_inner {
            let prev = x.clone();
            let q = Penalized::new(p, y.clone(), tau);
            let run = mosd_unchecked(&q, x, &full, eps, cfg);
            iterations += run.iterations;
            x = run.x;
            y = project_sparse(&x, s);
            if cfg.interrupted() {
                break 'outer;
            }
            if dist(&x, &prev) < eps {
                break;
            }
        }
        if dist(&x, &y) <= pen.xy_tol {
            status = SolverStatus::Converged;
            break;
        }
        tau *= pen.tau_growth;
        eps *= pen.eps_shrink;
    }
    Ok(SolverRun {
        x: project_sparse(&x, s),
        iterations,
        status,
    })
}

/// [`mospd`] followed by [`moiht`] from its output.
pub fn mohyb<P: MultiObjectiveProblem + ?Sized>(
    p: &P,
    x0: &[f64],
    s: SparseBudget,
    cfg: &SolverConfig,
) -> Result<SolverRun> {
    let first = mospd(p, x0, s, cfg)?;
    let (x, trace) = moiht(p, &first.x, s, cfg)?;
    Ok(SolverRun {
        x,
        iterations: first.iterations + trace.steps(),
        status: trace.status,
    })
}
