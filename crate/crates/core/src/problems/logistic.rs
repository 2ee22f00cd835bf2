use alloc::vec;
use alloc::vec::Vec;

use crate::error::{data, usage};
use crate::linalg::{dot, power_iteration};
use crate::{MultiObjectiveProblem, Result};

/// Bi-objective sparse logistic regression:
/// `f₁(w) = (1/N)Σ log(1 + exp(−t_i wᵀr_i))`, `f₂(w) = ½‖w‖²`.
#[derive(Clone, Debug, PartialEq)]
pub struct LogisticProblem {
    samples: Vec<f64>,
    rows: usize,
    cols: usize,
    labels: Vec<f64>,
    lipschitz: [f64; 2],
}

/// `log(1 + e^z)` without overflow.
fn softplus(z: f64) -> f64 {
    z.max(0.0) + libm::log1p(libm::exp(-libm::fabs(z)))
}

fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + libm::exp(-z))
    } else {
        let e = libm::exp(z);
        e / (1.0 + e)
    }
}

impl LogisticProblem {
    /// `samples` is the row-major `rows × cols` matrix `R`; labels must be ±1.
    /// `L(f₁) = ‖RᵀR‖₂/N` comes from power iteration.
    pub fn new(samples: Vec<f64>, rows: usize, cols: usize, labels: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 || samples.len() != rows * cols || labels.len() != rows {
            return Err(usage!(
                "inconsistent shapes: {} entries, {} labels for {}x{}",
                samples.len(),
                labels.len(),
                rows,
                cols
            ));
        }
        if let Some((i, t)) = labels
            .iter()
            .enumerate()
            .find(|(_, t)| **t != 1.0 && **t != -1.0)
        {
            return Err(data!("label {} at row {} is not -1 or +1", t, i + 1));
        }
        let spectral = power_iteration(cols, 1e-11, 1_000_000, |v| {
            let rv: Vec<f64> = samples.chunks_exact(cols).map(|r| dot(r, v)).collect();
            let mut out = vec![0.0; cols];
            for (r, s) in samples.chunks_exact(cols).zip(&rv) {
                out.iter_mut().zip(r).for_each(|(o, ri)| *o += ri * s);
            }
            out
        });
        let mut lf1 = spectral / rows as f64;
        if !(lf1 > 0.0) {
            // All-zero design: any positive constant is valid.
            lf1 = f64::MIN_POSITIVE;
        }
        Ok(Self {
            samples,
            rows,
            cols,
            labels,
            lipschitz: [lf1, 1.0],
        })
    }

    pub fn num_samples(&self) -> usize {
        self.rows
    }

    fn margins(&self, w: &[f64]) -> impl Iterator<Item = (&[f64], f64, f64)> + '_ {
        let w = w.to_vec();
        self.samples
            .chunks_exact(self.cols)
            .zip(&self.labels)
            .map(move |(r, &t)| (r, t, t * dot(&w, r)))
    }
}

impl MultiObjectiveProblem for LogisticProblem {
    fn dim(&self) -> usize {
        self.cols
    }

    fn num_objectives(&self) -> usize {
        2
    }

    fn evaluate(&self, w: &[f64]) -> Vec<f64> {
        let loss: f64 = self.margins(w).map(|(_, _, z)| softplus(-z)).sum();
        vec![loss / self.rows as f64, 0.5 * dot(w, w)]
    }

    fn gradients(&self, w: &[f64]) -> Vec<Vec<f64>> {
        let mut g = vec![0.0; self.cols];
        let n = self.rows as f64;
        for (r, t, z) in self.margins(w) {
            let coef = -t * sigmoid(-z) / n;
            g.iter_mut().zip(r).for_each(|(gi, ri)| *gi += coef * ri);
        }
        vec![g, w.to_vec()]
    }

    fn lipschitz(&self) -> Vec<f64> {
        self.lipschitz.to_vec()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn single_sample() {
        let p = LogisticProblem::new(vec![1.0, 0.0], 1, 2, vec![1.0]).unwrap();
        let f = p.evaluate(&[0.0, 0.0]);
        assert_abs_diff_eq!(f[0], core::f64::consts::LN_2, epsilon = 1e-15);
        assert_eq!(f[1], 0.0);
        let g = p.gradients(&[0.0, 0.0]);
        assert_abs_diff_eq!(g[0].as_slice(), [-0.5, 0.0].as_slice(), epsilon = 1e-15);
        assert_eq!(g[1], vec![0.0, 0.0]);
        assert_abs_diff_eq!(p.lipschitz()[0], 1.0, epsilon = 1e-12);
        assert_eq!(p.lipschitz()[1], 1.0);
    }

    #[test]
    fn rejects_bad_labels() {
        let err = LogisticProblem::new(vec![1.0, 2.0], 2, 1, vec![1.0, 0.0]).unwrap_err();
        assert!(matches!(err, crate::Error::Data(_)));
    }

    #[test]
    fn large_margins_stay_finite() {
        let p = LogisticProblem::new(vec![1.0], 1, 1, vec![-1.0]).unwrap();
        let f = p.evaluate(&[800.0]);
        assert_abs_diff_eq!(f[0], 800.0, epsilon = 1e-9);
        assert!(p.gradients(&[-800.0])[0][0].is_finite());
    }
}
