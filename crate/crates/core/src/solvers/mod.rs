//! Single-point solvers.
//!
//! [`moiht`] iterates the sparse proximal step `x ← x + d_L(x)`; [`mosd`]
//! is steepest common descent on a fixed support; [`mospd`] alternates
//! penalized descent and sparse projection with a growing penalty, and
//! [`mohyb`] chains it with [`moiht`]. [`scalarized_iht`] runs
//! single-objective hard thresholding on `f₁ + λf₂`.

mod config;
pub(crate) mod descent;
mod iht;
mod penalty;
mod scalarized;

pub use config::{ArmijoParams, Interrupt, PenaltyParams, SolverConfig};
pub use descent::{armijo_common, mosd};
pub use iht::moiht;
pub use penalty::{mohyb, mospd, Penalized};
pub use scalarized::{lambda_grid, scalarized_iht, Scalarized};

use alloc::vec::Vec;

/// How a solver run ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolverStatus {
    /// The stationarity test fired.
    Converged,
    /// The iteration budget ran out, or the run was interrupted.
    BudgetExhausted,
    /// The line search found no acceptable step before the test fired.
    Stalled,
}

/// One recorded iterate: point, objective vector and the stationarity
/// value measured there.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceStep {
    pub x: Vec<f64>,
    pub f: Vec<f64>,
    pub theta: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolverTrace {
    pub iterates: Vec<TraceStep>,
    pub status: SolverStatus,
}

impl SolverTrace {
    /// Number of update steps taken.
    pub fn steps(&self) -> usize {
        self.iterates.len().saturating_sub(1)
    }
}

/// Final point of a solver run.
#[derive(Clone, Debug, PartialEq)]
pub struct SolverRun {
    pub x: Vec<f64>,
    /// Inner iterations summed over all stages.
    pub iterations: usize,
    pub status: SolverStatus,
}
