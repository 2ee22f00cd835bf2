use alloc::vec::Vec;

use super::{SolverConfig, SolverStatus, SolverTrace, TraceStep};
use crate::directions::{apply_direction, theta_l_with_gradients};
use crate::error::{domain, usage};
use crate::linalg::dist;
use crate::{MultiObjectiveProblem, Result, SparseBudget};

/// Multi-objective iterative hard thresholding: `x_{k+1} = x_k + d_L(x_k)`
/// until `θ_L(x_k) > −eps` or the budget runs out.
///
/// A curvature at or below `max_j L(f_j)` is accepted with a warning; the
/// sufficient decrease guarantee then no longer holds.
pub fn moiht<P: MultiObjectiveProblem + ?Sized>(
    p: &P,
    x0: &[f64],
    s: SparseBudget,
    cfg: &SolverConfig,
) -> Result<(Vec<f64>, SolverTrace)> {
    cfg.validate()?;
    if x0.len() != p.dim() {
        return Err(usage!("start point has length {}, dimension is {}", x0.len(), p.dim()));
    }
    if !s.admits(x0) {
        return Err(domain!("start point violates the sparsity bound s={}", s.get()));
    }
    let lips = p.lipschitz();
    let lmax = lips.iter().copied().fold(0.0, f64::max);
    if cfg.curvature <= lmax {
        log::warn!(
            "curvature {} does not exceed max Lipschitz constant {}; descent is not guaranteed",
            cfg.curvature,
            lmax
        );
    }
    let mut x = x0.to_vec();
    let mut fx = p.evaluate(&x);
    let mut iterates = Vec::new();
    let mut status = SolverStatus::BudgetExhausted;
    for k in 0..=cfg.max_iter {
        let sol = theta_l_with_gradients(&p.gradients(&x), &x, s, cfg.curvature, cfg.enumeration_cap)?;
        iterates.push(TraceStep { x: x.clone(), f: fx.clone(), theta: sol.theta });
        if sol.theta > -cfg.eps {
            status = SolverStatus::Converged;
            break;
        }
        if k == cfg.max_iter || cfg.interrupted() {
            break;
        }
        let next = apply_direction(&x, &sol.d);
        let f_next = p.evaluate(&next);
        if cfg.curvature > lmax {
            let step_sq = dist(&x, &next) * dist(&x, &next);
            debug_assert!(
                (0..fx.len()).all(|j| {
                    let bound = 0.5 * step_sq * (cfg.curvature - lips[j]);
                    fx[j] - f_next[j] >= bound - 1e-9 * (1.0 + libm::fabs(fx[j]))
                }),
                "sufficient decrease violated"
            );
        }
        x = next;
        fx = f_next;
    }
    Ok((x, SolverTrace { iterates, status }))
}
