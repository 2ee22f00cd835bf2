//! Cardinality-constrained multi-objective optimization.
//!
//! Problems of the form `min F(x) = (f_1(x), …, f_m(x))` subject to
//! `‖x‖₀ ≤ s` are handled through three families of tools:
//!
//! * stationarity measures ([`directions`]): the steepest common descent
//!   value on a subspace, Pareto-stationarity over feasible directions and
//!   the sparse proximal measure `θ_L` used to define L-stationarity;
//! * single-point solvers ([`solvers`]): multi-objective iterative hard
//!   thresholding, steepest descent on a fixed support, sparse penalty
//!   decomposition and their cascade;
//! * a two-phase front approximation ([`sfsd`]) that seeds per-support
//!   archives and spans each of them with common and partial descent steps.
//!
//! Benchmark generators live in [`problems`] and front-quality measures in
//! [`metrics`]. The crate is `no_std` and only needs `alloc`; file formats,
//! dataset loading and the command line live in the companion crate.
#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod dominance;
mod error;
pub mod linalg;
mod problem;
pub mod rng;
mod support;

pub mod directions;
pub mod metrics;
pub mod problems;
pub mod sfsd;
pub mod simplex_qp;
pub mod solvers;

pub use dominance::{dominates, filter_nondominated};
pub use error::{Error, Result};
pub use problem::MultiObjectiveProblem;
pub use support::{
    binomial, project_sparse, super_supports, Combinations, SparseBudget, SupportSet, ZERO_TOL,
};

/// Default cap on the number of supports enumerated by one subproblem solve.
pub const DEFAULT_ENUMERATION_CAP: u128 = 2_000_000;
