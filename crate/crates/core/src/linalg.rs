//! Small dense vector helpers shared by the solvers.

use alloc::vec::Vec;

#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
pub fn norm_sq(a: &[f64]) -> f64 {
    dot(a, a)
}

#[inline]
pub fn norm(a: &[f64]) -> f64 {
    libm::sqrt(norm_sq(a))
}

/// `‖a − b‖_∞`
pub fn inf_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| libm::fabs(x - y))
        .fold(0.0, f64::max)
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    libm::sqrt(a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum())
}

/// `x + alpha * d`
pub fn add_scaled(x: &[f64], alpha: f64, d: &[f64]) -> Vec<f64> {
    x.iter().zip(d).map(|(xi, di)| xi + alpha * di).collect()
}

/// Row-major `rows × cols` matrix times vector.
pub fn mat_vec(a: &[f64], rows: usize, cols: usize, x: &[f64]) -> Vec<f64> {
    debug_assert_eq!(a.len(), rows * cols);
    a.chunks_exact(cols).map(|row| dot(row, x)).collect()
}

/// Number of entries with `|x_i| > tol`.
pub fn count_nonzero(x: &[f64], tol: f64) -> usize {
    x.iter().filter(|v| libm::fabs(**v) > tol).count()
}

/// Largest eigenvalue of the symmetric PSD operator `apply` by power
/// iteration. Stops when the residual `‖Av − μv‖` drops below `rel_tol·μ`.
pub fn power_iteration<F>(n: usize, rel_tol: f64, max_iter: usize, mut apply: F) -> f64
where
    F: FnMut(&[f64]) -> Vec<f64>,
{
    if n == 0 {
        return 0.0;
    }
    // Non-uniform start so that no eigenvector is orthogonal to it by symmetry.
    let mut v: Vec<f64> = (0..n).map(|i| 1.0 + libm::sqrt(i as f64 + 1.0)).collect();
    let nv = norm(&v);
    v.iter_mut().for_each(|x| *x /= nv);
    let mut mu = 0.0;
    for _ in 0..max_iter {
        let av = apply(&v);
        mu = dot(&v, &av);
        let nav = norm(&av);
        if nav == 0.0 {
            return 0.0;
        }
        let resid = libm::sqrt(
            av.iter()
                .zip(&v)
                .map(|(a, b)| (a - mu * b) * (a - mu * b))
                .sum(),
        );
        v = av.into_iter().map(|x| x / nav).collect();
        if resid <= rel_tol * libm::fabs(mu) {
            break;
        }
    }
    mu
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn power_iteration_diagonal() {
        let d = [1.0, 7.0, 3.0];
        let mu = power_iteration(3, 1e-12, 10_000, |v| {
            v.iter().zip(&d).map(|(a, b)| a * b).collect()
        });
        assert!((mu - 7.0).abs() < 1e-9);
    }

    #[test]
    fn helpers() {
        assert_eq!(inf_dist(&[1.0, -2.0], &[0.5, 1.0]), 3.0);
        assert_eq!(add_scaled(&[1.0, 1.0], 2.0, &[1.0, -1.0]), vec![3.0, -1.0]);
        assert_eq!(mat_vec(&[1.0, 2.0, 3.0, 4.0], 2, 2, &[1.0, 1.0]), vec![3.0, 7.0]);
        assert_eq!(count_nonzero(&[0.0, 1e-13, 2.0], 1e-12), 1);
    }
}
