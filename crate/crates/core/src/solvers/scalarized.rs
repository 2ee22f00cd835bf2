use alloc::vec;
use alloc::vec::Vec;

use super::{moiht, SolverConfig, SolverRun};
use crate::error::usage;
use crate::{MultiObjectiveProblem, Result, SparseBudget};

/// Single objective `f₁ + λf₂` of a bi-objective problem.
#[derive(Clone, Copy, Debug)]
pub struct Scalarized<'a, P: ?Sized> {
    inner: &'a P,
    lambda: f64,
}

impl<'a, P: MultiObjectiveProblem + ?Sized> Scalarized<'a, P> {
    pub fn new(inner: &'a P, lambda: f64) -> Result<Self> {
        if inner.num_objectives() != 2 {
            return Err(usage!("scalarization needs m = 2, got {}", inner.num_objectives()));
        }
        if !(lambda >= 0.0 && lambda.is_finite()) {
            return Err(usage!("weight must be finite and nonnegative, got {}", lambda));
        }
        Ok(Self { inner, lambda })
    }
}

impl<P: MultiObjectiveProblem + ?Sized> MultiObjectiveProblem for Scalarized<'_, P> {
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn num_objectives(&self) -> usize {
        1
    }

    fn evaluate(&self, x: &[f64]) -> Vec<f64> {
        let f = self.inner.evaluate(x);
        vec![f[0] + self.lambda * f[1]]
    }

    fn gradients(&self, x: &[f64]) -> Vec<Vec<f64>> {
        let g = self.inner.gradients(x);
        vec![g[0].iter().zip(&g[1]).map(|(a, b)| a + self.lambda * b).collect()]
    }

    fn lipschitz(&self) -> Vec<f64> {
        let l = self.inner.lipschitz();
        vec![l[0] + self.lambda * l[1]]
    }
}

/// `{2^{i+1/2} : i = −n, …, n−1}`, `2n` weights in increasing order.
pub fn lambda_grid(n: usize) -> Vec<f64> {
    let n = n as i64;
    (-n..n).map(|i| libm::pow(2.0, i as f64 + 0.5)).collect()
}

/// One hard-thresholding run per weight, each on `f₁ + λf₂` with curvature
/// `1.1·(L(f₁) + λL(f₂))`, all from `x0`.
pub fn scalarized_iht<P: MultiObjectiveProblem + ?Sized>(
    p: &P,
    s: SparseBudget,
    lambdas: &[f64],
    x0: &[f64],
    cfg: &SolverConfig,
) -> Result<Vec<SolverRun>> {
    if p.num_objectives() != 2 {
        return Err(usage!("scalarization needs m = 2, got {}", p.num_objectives()));
    }
    lambdas
        .iter()
        .map(|&lambda| {
            let q = Scalarized::new(p, lambda)?;
            let cfg = SolverConfig {
                curvature: 1.1 * q.lipschitz()[0],
                ..cfg.clone()
            };
            let (x, trace) = moiht(&q, x0, s, &cfg)?;
            Ok(SolverRun {
                x,
                iterations: trace.steps(),
                status: trace.status,
            })
        })
        .collect()
}
