use alloc::sync::Arc;
use core::fmt;

use crate::error::usage;
use crate::Result;

/// Backtracking parameters: trial steps `α₀δ^h`, sufficient decrease `γ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ArmijoParams {
    pub alpha0: f64,
    pub delta: f64,
    pub gamma: f64,
    /// Largest exponent `h` tried before giving up with `α = 0`.
    pub max_backtracks: u32,
}

impl Default for ArmijoParams {
    fn default() -> Self {
        Self {
            alpha0: 1.0,
            delta: 0.5,
            gamma: 1e-4,
            max_backtracks: 50,
        }
    }
}

/// Penalty schedule: `τ_{k+1} = growth·τ_k`, `ε_{k+1} = shrink·ε_k`,
/// stop once `‖x − y‖ ≤ xy_tol`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PenaltyParams {
    pub tau0: f64,
    pub tau_growth: f64,
    pub eps0: f64,
    pub eps_shrink: f64,
    pub xy_tol: f64,
    pub max_outer: usize,
    /// Cap on x/y alternations for one value of `τ`.
    pub max_inner: usize,
}

impl PenaltyParams {
    pub fn quadratic() -> Self {
        Self {
            tau0: 1.0,
            tau_growth: 1.5,
            eps0: 1e-2,
            eps_shrink: 0.9,
            xy_tol: 1e-3,
            max_outer: 200,
            max_inner: 100,
        }
    }

    pub fn logistic() -> Self {
        Self {
            tau_growth: 1.3,
            eps0: 1e-5,
            ..Self::quadratic()
        }
    }
}

/// Cooperative cancellation hook polled once per solver iteration.
#[derive(Clone)]
pub struct Interrupt(Arc<dyn Fn() -> bool + Send + Sync>);

impl Interrupt {
    pub fn new(f: impl Fn() -> bool + Send + Sync + 'static) -> Self {
        Self(Arc::new(f))
    }

    pub fn fired(&self) -> bool {
        (self.0)()
    }
}

impl fmt::Debug for Interrupt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Interrupt(..)")
    }
}

#[derive(Clone, Debug)]
pub struct SolverConfig {
    /// Curvature `L` of the sparse proximal step.
    pub curvature: f64,
    /// Stationarity tolerance of MOIHT and MOSD.
    pub eps: f64,
    pub max_iter: usize,
    pub armijo: ArmijoParams,
    pub penalty: PenaltyParams,
    /// Largest number of supports one `θ_L` evaluation may enumerate.
    pub enumeration_cap: u128,
    pub interrupt: Option<Interrupt>,
}

impl SolverConfig {
    /// `L = 1.1·max_j L(f_j)`, quadratic penalty schedule.
    pub fn quadratic(max_lipschitz: f64) -> Self {
        Self {
            curvature: 1.1 * max_lipschitz,
            eps: 1e-7,
            max_iter: 10_000,
            armijo: ArmijoParams::default(),
            penalty: PenaltyParams::quadratic(),
            enumeration_cap: crate::DEFAULT_ENUMERATION_CAP,
            interrupt: None,
        }
    }

    pub fn logistic(max_lipschitz: f64) -> Self {
        Self {
            penalty: PenaltyParams::logistic(),
            ..Self::quadratic(max_lipschitz)
        }
    }

    pub fn validate(&self) -> Result<()> {
        let a = &self.armijo;
        let p = &self.penalty;
        let open_unit = |v: f64| v > 0.0 && v < 1.0;
        let checks = [
            (self.curvature > 0.0 && self.curvature.is_finite(), "curvature must be positive"),
            (self.eps > 0.0, "eps must be positive"),
            (a.alpha0 > 0.0, "alpha0 must be positive"),
            (open_unit(a.delta), "delta must lie in (0, 1)"),
            (open_unit(a.gamma), "gamma must lie in (0, 1)"),
            (p.tau0 > 0.0, "tau0 must be positive"),
            (p.tau_growth > 1.0, "tau growth must exceed 1"),
            (p.eps0 > 0.0, "eps0 must be positive"),
            (open_unit(p.eps_shrink), "eps shrink must lie in (0, 1)"),
            (p.xy_tol > 0.0, "xy tolerance must be positive"),
        ];
        match checks.iter().find(|(ok, _)| !ok) {
            Some((_, msg)) => Err(usage!("invalid solver configuration: {}", msg)),
            None => Ok(()),
        }
    }

    pub(crate) fn interrupted(&self) -> bool {
        self.interrupt.as_ref().is_some_and(Interrupt::fired)
    }
}
