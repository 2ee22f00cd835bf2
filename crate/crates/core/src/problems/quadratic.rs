use alloc::vec;
use alloc::vec::Vec;

use nalgebra::DMatrix;
use rand::Rng as _;
use rand_distr::StandardNormal;

use crate::error::usage;
use crate::linalg::{dot, mat_vec, power_iteration};
use crate::{rng, MultiObjectiveProblem, Result};

/// `f(x) = ½xᵀQx − cᵀx + offset` with symmetric PSD `Q` (row-major).
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticObjective {
    pub q: Vec<f64>,
    pub c: Vec<f64>,
    pub offset: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticProblem {
    n: usize,
    objectives: Vec<QuadraticObjective>,
    lipschitz: Vec<f64>,
}

impl QuadraticProblem {
    /// When `lipschitz` is `None` the constants are the largest eigenvalues
    /// of the `Q` matrices, found by power iteration.
    pub fn new(
        n: usize,
        objectives: Vec<QuadraticObjective>,
        lipschitz: Option<Vec<f64>>,
    ) -> Result<Self> {
        if objectives.is_empty() {
            return Err(usage!("a problem needs at least one objective"));
        }
        for (j, o) in objectives.iter().enumerate() {
            if o.q.len() != n * n || o.c.len() != n {
                return Err(usage!("objective {} has inconsistent shapes for n={}", j + 1, n));
            }
        }
        let lipschitz = match lipschitz {
            Some(l) if l.len() != objectives.len() => {
                return Err(usage!("{} Lipschitz constants for {} objectives", l.len(), objectives.len()))
            }
            Some(l) => l,
            None => objectives
                .iter()
                .map(|o| power_iteration(n, 1e-12, 100_000, |v| mat_vec(&o.q, n, n, v)))
                .collect(),
        };
        if lipschitz.iter().any(|l| !(*l > 0.0)) {
            return Err(usage!("Lipschitz constants must be positive"));
        }
        Ok(Self {
            n,
            objectives,
            lipschitz,
        })
    }

    pub fn objectives(&self) -> &[QuadraticObjective] {
        &self.objectives
    }
}

impl MultiObjectiveProblem for QuadraticProblem {
    fn dim(&self) -> usize {
        self.n
    }

    fn num_objectives(&self) -> usize {
        self.objectives.len()
    }

    fn evaluate(&self, x: &[f64]) -> Vec<f64> {
        self.objectives
            .iter()
            .map(|o| 0.5 * dot(x, &mat_vec(&o.q, self.n, self.n, x)) - dot(&o.c, x) + o.offset)
            .collect()
    }

    fn gradients(&self, x: &[f64]) -> Vec<Vec<f64>> {
        self.objectives
            .iter()
            .map(|o| {
                let mut g = mat_vec(&o.q, self.n, self.n, x);
                g.iter_mut().zip(&o.c).for_each(|(gi, ci)| *gi -= ci);
                g
            })
            .collect()
    }

    fn lipschitz(&self) -> Vec<f64> {
        self.lipschitz.clone()
    }
}

/// Random bi-objective quadratic together with its generation parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticInstance {
    pub n: usize,
    pub kappa: f64,
    pub seed: u64,
    pub problem: QuadraticProblem,
}

/// Draws `Q_j = R_j D R_jᵀ` with `R_j` the orthogonal factor of a Gaussian
/// matrix and `D = diag(κ^{i/(n−1)})`, and `c_j` uniform on `[−1, 1)`.
///
/// Draw order on ChaCha8 stream 0 of `seed`: the `n×n` Gaussian matrix for
/// `Q_1` (row-major), the one for `Q_2`, then `c_1` and `c_2`. `Q_j` is
/// assembled as `I + R(D − I)Rᵀ` from its upper triangle, so `κ = 1` yields
/// the identity exactly and symmetry is exact.
pub fn generate_quadratic(n: usize, kappa: f64, seed: u64) -> Result<QuadraticInstance> {
    if n < 2 {
        return Err(usage!("quadratic instances need n >= 2, got {}", n));
    }
    if !(kappa >= 1.0 && kappa.is_finite()) {
        return Err(usage!("condition number must be >= 1, got {}", kappa));
    }
    let mut rng = rng::stream(seed, 0);
    let eig: Vec<f64> = (0..n)
        .map(|i| libm::pow(kappa, i as f64 / (n - 1) as f64))
        .collect();
    let mut matrices = Vec::with_capacity(2);
    for _ in 0..2 {
        let gauss: Vec<f64> = (0..n * n).map(|_| rng.sample(StandardNormal)).collect();
        let qr = DMatrix::from_row_slice(n, n, &gauss).qr();
        let mut r = qr.q();
        let diag = qr.r();
        for k in 0..n {
            if diag[(k, k)] < 0.0 {
                r.column_mut(k).neg_mut();
            }
        }
        let mut q = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let mut v = if i == j { 1.0 } else { 0.0 };
                for k in 0..n {
                    v += r[(i, k)] * (eig[k] - 1.0) * r[(j, k)];
                }
                q[i * n + j] = v;
                q[j * n + i] = v;
            }
        }
        matrices.push(q);
    }
    let mut objectives = Vec::with_capacity(2);
    for q in matrices {
        objectives.push(QuadraticObjective { q, c: Vec::new(), offset: 0.0 });
    }
    for o in objectives.iter_mut() {
        o.c = (0..n).map(|_| 2.0 * rng.random::<f64>() - 1.0).collect();
    }
    let problem = QuadraticProblem::new(n, objectives, Some(vec![kappa, kappa]))?;
    Ok(QuadraticInstance {
        n,
        kappa,
        seed,
        problem,
    })
}

/// `F(x) = ½(‖x − (3, 2.5)‖², ‖x − (1, 0.5)‖²)` on `ℝ²`, `L(F) = (1, 1)`.
/// With `s = 1` its global Pareto set is `{(x₁, 0): x₁ ∈ [1, 3]}` and the
/// local one `{(0, x₂): x₂ ∈ [0.5, 2.5]}`.
pub fn example4() -> QuadraticProblem {
    let identity = vec![1.0, 0.0, 0.0, 1.0];
    let objective = |a: f64, b: f64| QuadraticObjective {
        q: identity.clone(),
        c: vec![a, b],
        offset: 0.5 * (a * a + b * b),
    };
    QuadraticProblem::new(2, vec![objective(3.0, 2.5), objective(1.0, 0.5)], Some(vec![1.0, 1.0]))
        .expect("static problem data")
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn kappa_one_is_identity() {
        let inst = generate_quadratic(6, 1.0, 3).unwrap();
        for o in inst.problem.objectives() {
            for i in 0..6 {
                for j in 0..6 {
                    assert_eq!(o.q[i * 6 + j], if i == j { 1.0 } else { 0.0 });
                }
            }
        }
    }

    #[test]
    fn two_by_two_spectrum() {
        let inst = generate_quadratic(2, 10.0, 5).unwrap();
        for o in inst.problem.objectives() {
            let (a, b, d) = (o.q[0], o.q[1], o.q[3]);
            assert_eq!(o.q[1], o.q[2]);
            let tr = a + d;
            let disc = libm::sqrt((a - d) * (a - d) + 4.0 * b * b);
            assert_abs_diff_eq!((tr - disc) / 2.0, 1.0, epsilon = 1e-10);
            assert_abs_diff_eq!((tr + disc) / 2.0, 10.0, epsilon = 1e-10);
        }
        assert_eq!(inst.problem.lipschitz(), vec![10.0, 10.0]);
    }

    #[test]
    fn regeneration_is_bit_identical() {
        let a = generate_quadratic(8, 100.0, 11).unwrap();
        let b = generate_quadratic(8, 100.0, 11).unwrap();
        assert_eq!(a, b);
        let c = generate_quadratic(8, 100.0, 12).unwrap();
        assert_ne!(a, c);
        assert!(a.problem.objectives().iter().flat_map(|o| &o.c).all(|c| (-1.0..1.0).contains(c)));
    }

    #[test]
    fn rejects_bad_sizes() {
        assert!(generate_quadratic(1, 2.0, 0).is_err());
        assert!(generate_quadratic(4, 0.5, 0).is_err());
    }

    #[test]
    fn example4_values() {
        let p = example4();
        assert_eq!(p.evaluate(&[3.0, 2.5])[0], 0.0);
        assert_eq!(p.evaluate(&[1.0, 0.5])[1], 0.0);
        assert_eq!(p.gradients(&[0.0, 0.5]), vec![vec![-3.0, -2.0], vec![-1.0, 0.0]]);
        assert_abs_diff_eq!(p.evaluate(&[1.0, 0.0])[0], 5.125, epsilon = 1e-15);
        assert_abs_diff_eq!(p.evaluate(&[3.0, 0.0])[0], 3.125, epsilon = 1e-15);
    }

    #[test]
    fn lipschitz_from_power_iteration() {
        let o = QuadraticObjective {
            q: vec![2.0, 1.0, 1.0, 2.0],
            c: vec![0.0, 0.0],
            offset: 0.0,
        };
        let p = QuadraticProblem::new(2, vec![o], None).unwrap();
        assert_abs_diff_eq!(p.lipschitz()[0], 3.0, epsilon = 1e-9);
    }
}
