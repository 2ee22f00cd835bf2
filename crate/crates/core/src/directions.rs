//! Stationarity measures for `min F(x)` over `Ω = {‖x‖₀ ≤ s}`.
//!
//! * [`theta_subspace`]: steepest common descent restricted to a subspace
//!   `{d : d_i = 0, i ∉ J}`, optionally over a subset of the objectives;
//! * [`theta_feasible`]: the same measure over feasible directions at `x`;
//! * [`theta_l`]: the sparse proximal measure
//!   `min_{x+d ∈ Ω} max_j ∇f_j(x)ᵀd + (L/2)‖d‖²`, solved exactly by
//!   enumerating supports.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{domain, usage};
use crate::simplex_qp::{solve_columns, DirectionSolution};
use crate::support::{binomial, super_supports, Combinations, SparseBudget, SupportSet};
use crate::{Error, MultiObjectiveProblem, Result, DEFAULT_ENUMERATION_CAP};

/// Default tolerance of the stationarity tests.
pub const DEFAULT_STATIONARITY_EPS: f64 = 1e-7;

/// Relative slack under which two support candidates count as tied; the
/// earlier one (in lexicographic order) is kept.
const TIE_TOL: f64 = 1e-13;

/// Optimal direction of a sparse subproblem together with the support it
/// lives on.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseDirectionSolution {
    /// Full-length direction.
    pub d: Vec<f64>,
    /// Support attaining the optimum.
    pub support: SupportSet,
    pub theta: f64,
    pub lambda: Vec<f64>,
}

fn check_point<P: MultiObjectiveProblem + ?Sized>(p: &P, x: &[f64]) -> Result<()> {
    if x.len() != p.dim() {
        return Err(usage!("point has length {}, problem dimension is {}", x.len(), p.dim()));
    }
    if x.iter().any(|v| !v.is_finite()) {
        return Err(domain!("point has non-finite entries"));
    }
    Ok(())
}

fn check_feasible(x: &[f64], s: SparseBudget) -> Result<()> {
    let nnz = SupportSet::of(x).len();
    if nnz > s.get() {
        return Err(domain!("point has {} nonzeros, more than the bound s={}", nnz, s.get()));
    }
    Ok(())
}

fn improves(candidate: f64, best: f64) -> bool {
    candidate < best - TIE_TOL * (1.0 + libm::fabs(best))
}

/// `θ_J^I(x)`: `min_d max_{j∈I} ∇f_j(x)ᵀd + ½‖d‖²` with `d` zero off `J`.
///
/// `objectives` holds 0-based objective indices. The returned `d` has full
/// length and `lambda` has one weight per entry of `objectives`.
pub fn theta_subspace<P: MultiObjectiveProblem + ?Sized>(
    p: &P,
    x: &[f64],
    support: &SupportSet,
    objectives: &[usize],
) -> Result<DirectionSolution> {
    check_point(p, x)?;
    if support.dim() != p.dim() {
        return Err(usage!("support over {} coordinates for dimension {}", support.dim(), p.dim()));
    }
    if objectives.is_empty() {
        return Err(usage!("objective subset must be nonempty"));
    }
    if let Some(j) = objectives.iter().find(|&&j| j >= p.num_objectives()) {
        return Err(usage!("objective index {} out of range for m={}", j, p.num_objectives()));
    }
    Ok(subspace_with_gradients(&p.gradients(x), support, objectives))
}

pub(crate) fn subspace_with_gradients(
    grads: &[Vec<f64>],
    support: &SupportSet,
    objectives: &[usize],
) -> DirectionSolution {
    let idx = support.indices();
    let restricted: Vec<Vec<f64>> = objectives
        .iter()
        .map(|&j| idx.iter().map(|&i| grads[j][i]).collect())
        .collect();
    let cols: Vec<&[f64]> = restricted.iter().map(Vec::as_slice).collect();
    let zeros = vec![0.0; objectives.len()];
    let sol = solve_columns(&cols, &zeros, 1.0);
    let mut d = vec![0.0; support.dim()];
    for (&i, v) in idx.iter().zip(&sol.d) {
        d[i] = *v;
    }
    DirectionSolution { d, ..sol }
}

/// `θ(x)`: steepest common descent over the feasible directions at `x`.
///
/// A direction `d` is feasible at `x ∈ Ω` exactly when `supp(d)` fits in
/// some super support `J ⊇ S_1(x)` with `|J| = s`: then `x + td ∈ Ω` for
/// every `t`, and conversely a feasible segment keeps at most `s` nonzeros.
/// The feasible set is therefore the union of the subspaces
/// `{d : d_i = 0, i ∉ J}` and `θ(x) = min_J θ_J(x)`.
pub fn theta_feasible<P: MultiObjectiveProblem + ?Sized>(
    p: &P,
    x: &[f64],
    s: SparseBudget,
) -> Result<SparseDirectionSolution> {
    check_point(p, x)?;
    let grads = p.gradients(x);
    feasible_with_gradients(&grads, x, s)
}

pub(crate) fn feasible_with_gradients(
    grads: &[Vec<f64>],
    x: &[f64],
    s: SparseBudget,
) -> Result<SparseDirectionSolution> {
    let all: Vec<usize> = (0..grads.len()).collect();
    let mut best: Option<SparseDirectionSolution> = None;
    for j in super_supports(x, s)? {
        let sol = subspace_with_gradients(grads, &j, &all);
        if best.as_ref().is_none_or(|b| improves(sol.theta, b.theta)) {
            best = Some(SparseDirectionSolution {
                d: sol.d,
                support: j,
                theta: sol.theta,
                lambda: sol.lambda,
            });
        }
    }
    Ok(best.expect("a feasible point has at least one super support"))
}

/// `θ_L(x)` with the default enumeration cap.
pub fn theta_l<P: MultiObjectiveProblem + ?Sized>(
    p: &P,
    x: &[f64],
    s: SparseBudget,
    curvature: f64,
) -> Result<SparseDirectionSolution> {
    theta_l_capped(p, x, s, curvature, DEFAULT_ENUMERATION_CAP)
}

/// `θ_L(x) = min_{x+d ∈ Ω} max_j ∇f_j(x)ᵀd + (L/2)‖d‖²`.
///
/// Every `K` with `|K| = s` is visited: off `K` the direction is pinned to
/// `c = −x_{K̄}` and the free block solves a min-max problem with offsets
/// `b_j = ∇f_j(x)_{K̄}ᵀc + (L/2)‖c‖²`. The returned support is the first `K`
/// in lexicographic order attaining the minimum.
pub fn theta_l_capped<P: MultiObjectiveProblem + ?Sized>(
    p: &P,
    x: &[f64],
    s: SparseBudget,
    curvature: f64,
    cap: u128,
) -> Result<SparseDirectionSolution> {
    check_point(p, x)?;
    theta_l_with_gradients(&p.gradients(x), x, s, curvature, cap)
}

pub(crate) fn theta_l_with_gradients(
    grads: &[Vec<f64>],
    x: &[f64],
    s: SparseBudget,
    curvature: f64,
    cap: u128,
) -> Result<SparseDirectionSolution> {
    if !(curvature > 0.0 && curvature.is_finite()) {
        return Err(domain!("curvature must be positive and finite, got {}", curvature));
    }
    check_feasible(x, s)?;
    let n = x.len();
    let k = s.get();
    let count = binomial(n, k);
    if count > cap {
        return Err(Error::Capacity { count, cap });
    }
    let m = grads.len();
    let mut in_k = vec![false; n];
    let mut cols = vec![vec![0.0; k]; m];
    let mut b = vec![0.0; m];
    let mut best: Option<(Vec<usize>, DirectionSolution)> = None;
    for combo in Combinations::new(n, k) {
        in_k.iter_mut().for_each(|f| *f = false);
        combo.iter().for_each(|&i| in_k[i] = true);
        let mut c_sq = 0.0;
        b.iter_mut().for_each(|v| *v = 0.0);
        for i in (0..n).filter(|&i| !in_k[i]) {
            let ci = -x[i];
            if ci != 0.0 {
                c_sq += ci * ci;
                for (bj, g) in b.iter_mut().zip(grads) {
                    *bj += g[i] * ci;
                }
            }
        }
        b.iter_mut().for_each(|v| *v += 0.5 * curvature * c_sq);
        for (col, g) in cols.iter_mut().zip(grads) {
            for (dst, &i) in col.iter_mut().zip(&combo) {
                *dst = g[i];
            }
        }
        let refs: Vec<&[f64]> = cols.iter().map(Vec::as_slice).collect();
        let sol = solve_columns(&refs, &b, curvature);
        if best.as_ref().is_none_or(|(_, bs)| improves(sol.theta, bs.theta)) {
            best = Some((combo, sol));
        }
    }
    let (combo, sol) = best.expect("at least one support of size s");
    let mut d: Vec<f64> = x.iter().map(|v| -v).collect();
    for (&i, v) in combo.iter().zip(&sol.d) {
        d[i] = *v;
    }
    Ok(SparseDirectionSolution {
        d,
        support: SupportSet::new(combo, n)?,
        theta: sol.theta,
        lambda: sol.lambda,
    })
}

/// `θ_L(x) > −eps`.
pub fn is_l_stationary<P: MultiObjectiveProblem + ?Sized>(
    p: &P,
    x: &[f64],
    s: SparseBudget,
    curvature: f64,
    eps: f64,
) -> Result<bool> {
    check_eps(eps)?;
    Ok(theta_l(p, x, s, curvature)?.theta > -eps)
}

/// `θ(x) > −eps`.
pub fn is_pareto_stationary<P: MultiObjectiveProblem + ?Sized>(
    p: &P,
    x: &[f64],
    s: SparseBudget,
    eps: f64,
) -> Result<bool> {
    check_eps(eps)?;
    Ok(theta_feasible(p, x, s)?.theta > -eps)
}

fn check_eps(eps: f64) -> Result<()> {
    if !(eps > 0.0) {
        return Err(usage!("tolerance must be positive, got {}", eps));
    }
    Ok(())
}

/// `z = x + d`, with coordinates the direction clears set to exact zeros.
pub(crate) fn apply_direction(x: &[f64], d: &[f64]) -> Vec<f64> {
    x.iter()
        .zip(d)
        .map(|(xi, di)| if *di == -*xi { 0.0 } else { xi + di })
        .collect()
}
