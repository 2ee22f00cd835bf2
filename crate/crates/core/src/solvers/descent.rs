use alloc::vec::Vec;

use super::{ArmijoParams, SolverConfig, SolverRun, SolverStatus};
use crate::directions::subspace_with_gradients;
use crate::error::{domain, usage};
use crate::linalg::add_scaled;
use crate::{MultiObjectiveProblem, Result, SupportSet};

/// Largest `α = α₀δ^h`, `h = 0..=max_backtracks`, such that
/// `f_j(x + αd) ≤ f_j(x) + γαθ` for every `j` in `objectives`; `0` when
/// no trial step qualifies.
pub fn armijo_common<P: MultiObjectiveProblem + ?Sized>(
    p: &P,
    x: &[f64],
    d: &[f64],
    theta: f64,
    objectives: &[usize],
    params: &ArmijoParams,
) -> Result<f64> {
    if !(theta < 0.0) {
        return Err(usage!("line search needs a descent value theta < 0, got {}", theta));
    }
    if x.len() != p.dim() || d.len() != p.dim() {
        return Err(usage!("point/direction length does not match dimension {}", p.dim()));
    }
    if let Some(j) = objectives.iter().find(|&&j| j >= p.num_objectives()) {
        return Err(usage!("objective index {} out of range", j));
    }
    Ok(armijo_from(p, x, &p.evaluate(x), d, theta, objectives, params))
}

pub(crate) fn armijo_from<P: MultiObjectiveProblem + ?Sized>(
    p: &P,
    x: &[f64],
    fx: &[f64],
    d: &[f64],
    theta: f64,
    objectives: &[usize],
    params: &ArmijoParams,
) -> f64 {
    let mut alpha = params.alpha0;
    for _ in 0..=params.max_backtracks {
        let f = p.evaluate(&add_scaled(x, alpha, d));
        if objectives
            .iter()
            .all(|&j| f[j] <= fx[j] + params.gamma * alpha * theta)
        {
            return alpha;
        }
        alpha *= params.delta;
    }
    0.0
}

/// Steepest common descent restricted to `J`: repeat `d = d_J(x)`, stop
/// when `θ_J(x) > −eps`, otherwise step by the Armijo rule. Coordinates off
/// `J` stay exactly zero.
pub fn mosd<P: MultiObjectiveProblem + ?Sized>(
    p: &P,
    x0: &[f64],
    support: &SupportSet,
    eps: f64,
    cfg: &SolverConfig,
) -> Result<SolverRun> {
    cfg.validate()?;
    if x0.len() != p.dim() || support.dim() != p.dim() {
        return Err(usage!("start point or support does not match dimension {}", p.dim()));
    }
    if !(eps > 0.0) {
        return Err(usage!("tolerance must be positive, got {}", eps));
    }
    if let Some(i) = (0..x0.len()).find(|&i| x0[i] != 0.0 && !support.contains(i)) {
        return Err(domain!("start point is nonzero at index {} outside the support", i + 1));
    }
    Ok(mosd_unchecked(p, x0.to_vec(), support, eps, cfg))
}

pub(crate) fn mosd_unchecked<P: MultiObjectiveProblem + ?Sized>(
    p: &P,
    mut x: Vec<f64>,
    support: &SupportSet,
    eps: f64,
    cfg: &SolverConfig,
) -> SolverRun {
    let all: Vec<usize> = (0..p.num_objectives()).collect();
    let mut fx = p.evaluate(&x);
    for k in 0..cfg.max_iter {
        if cfg.interrupted() {
            return SolverRun { x, iterations: k, status: SolverStatus::BudgetExhausted };
        }
        let sol = subspace_with_gradients(&p.gradients(&x), support, &all);
        if sol.theta > -eps {
            return SolverRun { x, iterations: k, status: SolverStatus::Converged };
        }
        let alpha = armijo_from(p, &x, &fx, &sol.d, sol.theta, &all, &cfg.armijo);
        if alpha == 0.0 {
            return SolverRun { x, iterations: k, status: SolverStatus::Stalled };
        }
        x = add_scaled(&x, alpha, &sol.d);
        fx = p.evaluate(&x);
    }
    SolverRun {
        x,
        iterations: cfg.max_iter,
        status: SolverStatus::BudgetExhausted,
    }
}
