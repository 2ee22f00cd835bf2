//! Exact solver for min-max direction subproblems through their simplex dual.
//!
//! The primal problem is
//!
//! ```text
//! min_d  max_j (g_jᵀd + b_j) + (L/2)‖d‖²
//! ```
//!
//! and its dual is `min_{λ ∈ Δ_m} q(λ) = (1/(2L))‖Gλ‖² − bᵀλ`, with the primal
//! direction recovered as `d = −(1/L)Gλ*`. For `m = 2` the dual is a clipped
//! one-dimensional quadratic; for `m ≤ 4` every face of the simplex is
//! visited and the best stationary point of a face wins; larger `m` uses
//! accelerated projected gradient until the Frank-Wolfe gap certifies
//! optimality.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{domain, usage};
use crate::linalg::dot;
use crate::Result;

/// Duality-gap target of the iterative path.
pub const GAP_TOL: f64 = 1e-9;
const MAX_PG_ITER: usize = 200_000;
const EXACT_FACE_LIMIT: usize = 4;
const POLISH_FACE_LIMIT: usize = 14;
const POLISH_SUPPORT_TOL: f64 = 1e-7;

/// Data of one dual problem.
#[derive(Clone, Debug, PartialEq)]
pub struct DualInstance {
    /// The `m` columns `g_j`, all of the same length.
    pub gradients: Vec<Vec<f64>>,
    /// Offsets `b_j`.
    pub offsets: Vec<f64>,
    /// Curvature `L > 0`.
    pub curvature: f64,
}

/// Primal/dual pair returned by [`solve_simplex_qp`].
#[derive(Clone, Debug, PartialEq)]
pub struct DirectionSolution {
    /// Direction over the coordinates the columns are restricted to.
    pub d: Vec<f64>,
    /// Simplex weights.
    pub lambda: Vec<f64>,
    /// Primal optimal value `max_j(g_jᵀd + b_j) + (L/2)‖d‖²`.
    pub theta: f64,
    /// Frank-Wolfe gap `λᵀ∇q(λ) − min_j ∇q(λ)_j` certifying optimality.
    pub duality_gap: f64,
}

pub fn solve_simplex_qp(inst: &DualInstance) -> Result<DirectionSolution> {
    let m = inst.gradients.len();
    if m == 0 {
        return Err(usage!("dual instance needs at least one column"));
    }
    if inst.offsets.len() != m {
        return Err(usage!("{} offsets for {} columns", inst.offsets.len(), m));
    }
    let k = inst.gradients[0].len();
    if inst.gradients.iter().any(|g| g.len() != k) {
        return Err(usage!("columns of different lengths"));
    }
    if !(inst.curvature.is_finite() && inst.curvature > 0.0) {
        return Err(domain!("curvature must be positive and finite, got {}", inst.curvature));
    }
    let finite = inst
        .gradients
        .iter()
        .flatten()
        .chain(&inst.offsets)
        .all(|v| v.is_finite());
    if !finite {
        return Err(domain!("non-finite entry in dual instance"));
    }
    let cols: Vec<&[f64]> = inst.gradients.iter().map(|g| g.as_slice()).collect();
    Ok(solve_columns(&cols, &inst.offsets, inst.curvature))
}

/// Unchecked entry point used by the direction routines.
pub(crate) fn solve_columns(cols: &[&[f64]], b: &[f64], curvature: f64) -> DirectionSolution {
    let m = cols.len();
    let k = cols.first().map_or(0, |c| c.len());
    let mut h = vec![0.0; m * m];
    for i in 0..m {
        for j in i..m {
            let v = dot(cols[i], cols[j]) / curvature;
            h[i * m + j] = v;
            h[j * m + i] = v;
        }
    }
    if cols.iter().all(|c| c.iter().all(|&v| v == 0.0)) {
        return DirectionSolution {
            d: vec![0.0; k],
            lambda: vec![1.0 / m as f64; m],
            theta: b.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            duality_gap: 0.0,
        };
    }
    let lambda = minimize_on_simplex(&h, b, m);
    finish(cols, b, curvature, &h, lambda)
}

fn finish(
    cols: &[&[f64]],
    b: &[f64],
    curvature: f64,
    h: &[f64],
    lambda: Vec<f64>,
) -> DirectionSolution {
    let m = cols.len();
    let k = cols[0].len();
    let mut d = vec![0.0; k];
    for (lj, col) in lambda.iter().zip(cols) {
        if *lj != 0.0 {
            for (di, gi) in d.iter_mut().zip(col.iter()) {
                *di -= lj * gi / curvature;
            }
        }
    }
    let lin = (0..m)
        .map(|j| dot(cols[j], &d) + b[j])
        .fold(f64::NEG_INFINITY, f64::max);
    let theta = lin + 0.5 * curvature * dot(&d, &d);
    let duality_gap = fw_gap(h, b, &lambda);
    DirectionSolution {
        d,
        lambda,
        theta,
        duality_gap,
    }
}

fn grad_q(h: &[f64], b: &[f64], lambda: &[f64]) -> Vec<f64> {
    let m = b.len();
    (0..m)
        .map(|i| dot(&h[i * m..(i + 1) * m], lambda) - b[i])
        .collect()
}

fn q_value(h: &[f64], b: &[f64], lambda: &[f64]) -> f64 {
    let m = b.len();
    let mut quad = 0.0;
    for i in 0..m {
        quad += lambda[i] * dot(&h[i * m..(i + 1) * m], lambda);
    }
    0.5 * quad - dot(b, lambda)
}

fn fw_gap(h: &[f64], b: &[f64], lambda: &[f64]) -> f64 {
    let g = grad_q(h, b, lambda);
    let min = g.iter().copied().fold(f64::INFINITY, f64::min);
    (dot(&g, lambda) - min).max(0.0)
}

fn minimize_on_simplex(h: &[f64], b: &[f64], m: usize) -> Vec<f64> {
    match m {
        1 => vec![1.0],
        2 => two_objective(h, b),
        _ if m <= EXACT_FACE_LIMIT => enumerate_faces(h, b, m),
        _ => projected_gradient(h, b, m),
    }
}

fn two_objective(h: &[f64], b: &[f64]) -> Vec<f64> {
    let (h11, h12, h22) = (h[0], h[1], h[3]);
    // q(t, 1 − t) = ½ a t² + c t + const with
    let a = h11 - 2.0 * h12 + h22;
    let c = h12 - h22 - b[0] + b[1];
    let scale = h11.abs().max(h22.abs()).max(f64::MIN_POSITIVE);
    let t = if a > 1e-14 * scale {
        (-c / a).clamp(0.0, 1.0)
    } else if c < 0.0 {
        1.0
    } else if c > 0.0 {
        0.0
    } else {
        0.5
    };
    vec![t, 1.0 - t]
}

/// Best stationary point over all faces of the simplex. An optimum with
/// minimal support has a nonsingular face KKT system, so the global
/// minimizer is among the candidates.
pub(crate) fn enumerate_faces(h: &[f64], b: &[f64], m: usize) -> Vec<f64> {
    let mut best = vec![0.0; m];
    best[0] = 1.0;
    let mut best_q = q_value(h, b, &best);
    for mask in 1u32..(1u32 << m) {
        let face: Vec<usize> = (0..m).filter(|i| mask & (1 << i) != 0).collect();
        let Some(cand) = face_stationary_point(h, b, m, &face) else {
            continue;
        };
        let q = q_value(h, b, &cand);
        if q < best_q {
            best_q = q;
            best = cand;
        }
    }
    best
}

/// Solves `H_SS λ_S − ν·1 = b_S`, `1ᵀλ_S = 1` and returns the full-length
/// `λ` when it lies in the simplex (up to round-off, then cleaned).
fn face_stationary_point(h: &[f64], b: &[f64], m: usize, face: &[usize]) -> Option<Vec<f64>> {
    let k = face.len();
    let w = k + 1;
    let mut a = vec![0.0; w * (w + 1)];
    for (r, &i) in face.iter().enumerate() {
        for (c, &j) in face.iter().enumerate() {
            a[r * (w + 1) + c] = h[i * m + j];
        }
        a[r * (w + 1) + k] = -1.0;
        a[r * (w + 1) + w] = b[i];
    }
    for c in 0..k {
        a[k * (w + 1) + c] = 1.0;
    }
    a[k * (w + 1) + w] = 1.0;
    let scale = h.iter().fold(1.0f64, |acc, v| acc.max(v.abs()));
    let sol = gauss_solve(&mut a, w, 1e-13 * scale)?;
    if sol[..k].iter().any(|&v| v < -1e-12) {
        return None;
    }
    let mut lambda = vec![0.0; m];
    let mut total = 0.0;
    for (r, &i) in face.iter().enumerate() {
        let v = sol[r].max(0.0);
        lambda[i] = v;
        total += v;
    }
    if total <= 0.0 {
        return None;
    }
    lambda.iter_mut().for_each(|v| *v /= total);
    Some(lambda)
}

/// Gaussian elimination with partial pivoting on an augmented `w × (w+1)`
/// system. Returns `None` when a pivot falls below `tol`.
fn gauss_solve(a: &mut [f64], w: usize, tol: f64) -> Option<Vec<f64>> {
    let stride = w + 1;
    for col in 0..w {
        let piv = (col..w)
            .max_by(|&r1, &r2| {
                a[r1 * stride + col]
                    .abs()
                    .partial_cmp(&a[r2 * stride + col].abs())
                    .unwrap_or(core::cmp::Ordering::Equal)
            })
            .unwrap();
        if a[piv * stride + col].abs() < tol {
            return None;
        }
        if piv != col {
            for c in 0..stride {
                a.swap(piv * stride + c, col * stride + c);
            }
        }
        let p = a[col * stride + col];
        for r in col + 1..w {
            let f = a[r * stride + col] / p;
            if f != 0.0 {
                for c in col..stride {
                    a[r * stride + c] -= f * a[col * stride + c];
                }
            }
        }
    }
    let mut x = vec![0.0; w];
    for r in (0..w).rev() {
        let mut acc = a[r * stride + w];
        for c in r + 1..w {
            acc -= a[r * stride + c] * x[c];
        }
        x[r] = acc / a[r * stride + r];
    }
    Some(x)
}

/// Euclidean projection onto the unit simplex (sort-based).
fn project_simplex(v: &[f64]) -> Vec<f64> {
    let mut u = v.to_vec();
    u.sort_by(|a, b| b.partial_cmp(a).unwrap_or(core::cmp::Ordering::Equal));
    let mut css = 0.0;
    let mut tau = 0.0;
    for (i, ui) in u.iter().enumerate() {
        css += ui;
        let t = (css - 1.0) / (i as f64 + 1.0);
        if ui - t > 0.0 {
            tau = t;
        }
    }
    v.iter().map(|x| (x - tau).max(0.0)).collect()
}

fn projected_gradient(h: &[f64], b: &[f64], m: usize) -> Vec<f64> {
    // Gershgorin bound on the largest eigenvalue of H.
    let lip = (0..m)
        .map(|i| h[i * m..(i + 1) * m].iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let mut x = vec![1.0 / m as f64; m];
    let mut y = x.clone();
    let mut t = 1.0f64;
    for _ in 0..MAX_PG_ITER {
        let g = grad_q(h, b, &y);
        let step: Vec<f64> = y.iter().zip(&g).map(|(yi, gi)| yi - gi / lip).collect();
        let x_next = project_simplex(&step);
        let t_next = (1.0 + libm::sqrt(1.0 + 4.0 * t * t)) / 2.0;
        let beta = (t - 1.0) / t_next;
        // Restart momentum when the objective goes up.
        if q_value(h, b, &x_next) > q_value(h, b, &x) {
            y = x.clone();
            t = 1.0;
            continue;
        }
        y = x_next
            .iter()
            .zip(&x)
            .map(|(a, c)| a + beta * (a - c))
            .collect();
        x = x_next;
        t = t_next;
        if fw_gap(h, b, &x) <= GAP_TOL {
            break;
        }
    }
    polish(h, b, m, x)
}

/// Enumerates the faces inside the support detected by projected gradient
/// and keeps the best stationary point when it beats the iterate.
fn polish(h: &[f64], b: &[f64], m: usize, x: Vec<f64>) -> Vec<f64> {
    // Active indices have positive weight or a near-minimal dual gradient.
    let g = grad_q(h, b, &x);
    let gmin = g.iter().copied().fold(f64::INFINITY, f64::min);
    let slack = 1e-6 * (1.0 + gmin.abs());
    let cand_support: Vec<usize> = (0..m)
        .filter(|&i| x[i] > POLISH_SUPPORT_TOL || g[i] <= gmin + slack)
        .collect();
    if cand_support.is_empty() || cand_support.len() > POLISH_FACE_LIMIT {
        return x;
    }
    let mut best_q = q_value(h, b, &x);
    let mut best_gap = fw_gap(h, b, &x);
    let mut best = x;
    let k = cand_support.len();
    for mask in 1u32..(1u32 << k) {
        let face: Vec<usize> = (0..k)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| cand_support[i])
            .collect();
        if let Some(cand) = face_stationary_point(h, b, m, &face) {
            // q agrees to round-off near the optimum; the gap decides.
            let q = q_value(h, b, &cand);
            let gap = fw_gap(h, b, &cand);
            if q <= best_q + 1e-12 * (1.0 + best_q.abs()) && gap < best_gap {
                best_q = q.min(best_q);
                best_gap = gap;
                best = cand;
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn solve(cols: Vec<Vec<f64>>, b: Vec<f64>, l: f64) -> DirectionSolution {
        solve_simplex_qp(&DualInstance {
            gradients: cols,
            offsets: b,
            curvature: l,
        })
        .unwrap()
    }

    /// Brute-force over λ = (t, 1 − t) on a grid of step `step`.
    fn grid_theta(g1: &[f64], g2: &[f64], b: &[f64], l: f64, step: f64) -> f64 {
        let steps = libm::round(1.0 / step) as usize;
        (0..=steps)
            .map(|i| {
                let t = i as f64 * step;
                let v: Vec<f64> = g1.iter().zip(g2).map(|(a, c)| t * a + (1.0 - t) * c).collect();
                -dot(&v, &v) / (2.0 * l) + t * b[0] + (1.0 - t) * b[1]
            })
            .fold(f64::NEG_INFINITY, f64::max)
    }

    #[test]
    fn symmetric_unit_gradients() {
        let s = solve(vec![vec![1.0, 0.0], vec![0.0, 1.0]], vec![0.0, 0.0], 1.0);
        assert_abs_diff_eq!(s.lambda.as_slice(), [0.5, 0.5].as_slice(), epsilon = 1e-12);
        assert_abs_diff_eq!(s.d.as_slice(), [-0.5, -0.5].as_slice(), epsilon = 1e-12);
        assert_abs_diff_eq!(s.theta, -0.25, epsilon = 1e-12);
    }

    #[test]
    fn single_objective() {
        let s = solve(vec![vec![2.0, 0.0]], vec![0.0], 1.0);
        assert_eq!(s.d, vec![-2.0, 0.0]);
        assert_abs_diff_eq!(s.theta, -2.0, epsilon = 1e-12);
    }

    #[test]
    fn grid_checked_pair() {
        let g1 = [2.0, 0.0];
        let g2 = [-1.0, 1.0];
        let s = solve(vec![g1.to_vec(), g2.to_vec()], vec![0.0, 0.0], 1.0);
        // Oracle: the grid maximizer of the dual sits at t = 0.4.
        assert_abs_diff_eq!(grid_theta(&g1, &g2, &[0.0, 0.0], 1.0, 1e-4), -0.2, epsilon = 1e-12);
        assert_abs_diff_eq!(s.lambda.as_slice(), [0.4, 0.6].as_slice(), epsilon = 1e-9);
        assert_abs_diff_eq!(s.d.as_slice(), [-0.2, -0.6].as_slice(), epsilon = 1e-9);
        assert_abs_diff_eq!(s.theta, -0.2, epsilon = 1e-9);
    }

    #[test]
    fn zero_gradients_are_degenerate() {
        let s = solve(vec![vec![0.0; 3]; 3], vec![0.5, -1.0, 2.0], 1.0);
        assert_eq!(s.d, vec![0.0; 3]);
        assert_eq!(s.lambda, vec![1.0 / 3.0; 3]);
        assert_eq!(s.theta, 2.0);
    }

    #[test]
    fn rejects_bad_input() {
        let bad = DualInstance {
            gradients: vec![vec![f64::NAN]],
            offsets: vec![0.0],
            curvature: 1.0,
        };
        assert!(matches!(solve_simplex_qp(&bad), Err(crate::Error::Domain(_))));
        let empty = DualInstance {
            gradients: vec![],
            offsets: vec![],
            curvature: 1.0,
        };
        assert!(matches!(solve_simplex_qp(&empty), Err(crate::Error::Usage(_))));
    }

    #[test]
    fn simplex_projection() {
        let p = project_simplex(&[0.5, 0.5, 0.5]);
        assert_abs_diff_eq!(p.as_slice(), [1.0 / 3.0; 3].as_slice(), epsilon = 1e-15);
        assert_eq!(project_simplex(&[3.0, 0.0]), vec![1.0, 0.0]);
    }

    fn column_strategy(m: usize, k: usize) -> impl Strategy<Value = (Vec<Vec<f64>>, Vec<f64>, f64)> {
        (
            prop::collection::vec(prop::collection::vec(-3.0f64..3.0, k), m),
            prop::collection::vec(-1.0f64..1.0, m),
            0.2f64..5.0,
        )
    }

    proptest! {
        #[test]
        fn structural_invariants((cols, b, l) in (1usize..6, 1usize..5).prop_flat_map(|(m, k)| column_strategy(m, k))) {
            let s = solve(cols.clone(), b.clone(), l);
            let total: f64 = s.lambda.iter().sum();
            prop_assert!(s.lambda.iter().all(|&v| v >= 0.0));
            prop_assert!((total - 1.0).abs() <= 1e-9);
            // d = −(1/L)Gλ
            for i in 0..s.d.len() {
                let gl: f64 = cols.iter().zip(&s.lambda).map(|(c, w)| c[i] * w).sum();
                prop_assert!((s.d[i] + gl / l).abs() <= 1e-9);
            }
            // d = 0 is primal feasible; every simplex vertex is dual feasible.
            let max_b = b.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            prop_assert!(s.theta <= max_b + 1e-9);
            for (c, bj) in cols.iter().zip(&b) {
                prop_assert!(s.theta >= bj - dot(c, c) / (2.0 * l) - 1e-9);
            }
            prop_assert!(s.duality_gap <= 1e-9);
        }

        #[test]
        fn agrees_with_grid((cols, b, l) in column_strategy(2, 3)) {
            let s = solve(cols.clone(), b.clone(), l);
            let grid = grid_theta(&cols[0], &cols[1], &b, l, 1e-4);
            prop_assert!((s.theta - grid).abs() <= 1e-6, "{} vs {}", s.theta, grid);
        }

        #[test]
        fn curvature_scaling((cols, _b, l) in column_strategy(3, 3), c in 0.1f64..10.0) {
            let zero = vec![0.0; 3];
            let base = solve(cols.clone(), zero.clone(), l);
            let scaled = solve(cols, zero, c * l);
            prop_assert!((scaled.theta - base.theta / c).abs() <= 1e-8);
            for (a, b) in scaled.d.iter().zip(&base.d) {
                prop_assert!((a - b / c).abs() <= 1e-8);
            }
        }

        #[test]
        fn iterative_path_matches_face_enumeration((cols, b, l) in column_strategy(6, 4)) {
            let refs: Vec<&[f64]> = cols.iter().map(|c| c.as_slice()).collect();
            let iterative = solve_columns(&refs, &b, l);
            let m = cols.len();
            let mut h = vec![0.0; m * m];
            for i in 0..m {
                for j in 0..m {
                    h[i * m + j] = dot(&cols[i], &cols[j]) / l;
                }
            }
            let exact = finish(&refs, &b, l, &h, enumerate_faces(&h, &b, m));
            prop_assert!((iterative.theta - exact.theta).abs() <= 1e-7,
                "{} vs {}", iterative.theta, exact.theta);
        }
    }
}
