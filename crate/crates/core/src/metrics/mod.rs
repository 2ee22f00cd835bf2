//! Front-quality indicators and performance profiles.
//!
//! The spread indicators follow the usual derivative-free benchmarking
//! definitions (reconstructed, since only their names are fixed):
//!
//! * Γ-spread: augment the front with the extreme points of the reference
//!   front, sort by each objective in turn and take the largest gap between
//!   consecutive values, maximized over objectives;
//! * Δ-spread (two objectives): sort by `f₁`, let `d_i` be the consecutive
//!   Euclidean gaps with mean `d̄`, and `d₀`, `d_N` the distances from the
//!   first and last points to the reference extremes; then
//!   `Δ = (d₀ + d_N + Σ|d_i − d̄|) / (d₀ + d_N + (N−1)d̄)`.

mod front;
mod indicators;
mod profiles;

pub use front::{build_reference_front, Front, FrontRow};
pub use indicators::{
    default_reference_point, delta_spread, gamma_spread, hypervolume_2d, log_rescale, purity,
    PURITY_TOL,
};
pub use profiles::{performance_profiles, ProfileCurve};
