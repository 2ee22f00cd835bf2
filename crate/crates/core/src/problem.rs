use alloc::vec::Vec;

/// Oracle for a smooth vector objective `F: ℝⁿ → ℝᵐ`.
///
/// Implementations must be callable from several threads at once.
pub trait MultiObjectiveProblem: Sync {
    /// Dimension `n` of the decision vector.
    fn dim(&self) -> usize;
    /// Number of objectives `m`.
    fn num_objectives(&self) -> usize;
    fn evaluate(&self, x: &[f64]) -> Vec<f64>;
    /// One gradient of length `n` per objective.
    fn gradients(&self, x: &[f64]) -> Vec<Vec<f64>>;
    /// Per-objective Lipschitz constants of the gradients, `L(f_j) > 0`.
    fn lipschitz(&self) -> Vec<f64>;

    fn max_lipschitz(&self) -> f64 {
        self.lipschitz().into_iter().fold(0.0, f64::max)
    }
}

impl<P: MultiObjectiveProblem + ?Sized> MultiObjectiveProblem for &P {
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn num_objectives(&self) -> usize {
        (**self).num_objectives()
    }
    fn evaluate(&self, x: &[f64]) -> Vec<f64> {
        (**self).evaluate(x)
    }
    fn gradients(&self, x: &[f64]) -> Vec<Vec<f64>> {
        (**self).gradients(x)
    }
    fn lipschitz(&self) -> Vec<f64> {
        (**self).lipschitz()
    }
}
