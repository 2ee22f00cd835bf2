use alloc::vec::Vec;

use super::{crowding_distance, ArchiveEntry, CrowdingFilter, ParetoArchive};
use crate::directions::subspace_with_gradients;
use crate::error::usage;
use crate::linalg::add_scaled;
use crate::solvers::descent::{armijo_from, mosd_unchecked};
use crate::solvers::{ArmijoParams, Interrupt, SolverConfig};
use crate::{MultiObjectiveProblem, Result, SupportSet};

#[derive(Clone, Debug)]
pub struct SfsdConfig {
    pub armijo: ArmijoParams,
    /// A step is attempted only when `θ < −theta_tol`.
    pub theta_tol: f64,
    pub crowding: CrowdingFilter,
    /// Entries whose crowding distance is below this value never explore
    /// (ignored when the filter is off). Without a floor an evenly spread
    /// front passes the mean test everywhere and doubles every sweep.
    pub min_crowding: f64,
    /// Stop early when a sweep leaves the archive unchanged.
    pub stop_on_no_change: bool,
    /// After the sweeps, drive every entry to `θ_J ≥ −tol` with common
    /// descent steps only (no explorations, so no new entries).
    pub final_descent: Option<f64>,
    /// Iteration cap per entry for the final descent.
    pub final_max_iter: usize,
    pub interrupt: Option<Interrupt>,
}

impl Default for SfsdConfig {
    fn default() -> Self {
        Self {
            armijo: ArmijoParams::default(),
            theta_tol: 1e-7,
            crowding: CrowdingFilter::Mean,
            min_crowding: 0.05,
            stop_on_no_change: true,
            final_descent: Some(1e-7),
            final_max_iter: 10_000,
            interrupt: None,
        }
    }
}

/// Why the sweeps ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SfsdStop {
    Budget,
    NoChange,
    Interrupted,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SfsdOutcome {
    pub archive: ParetoArchive,
    pub sweeps: usize,
    pub stop: SfsdStop,
}

/// Nonempty proper subsets of `0..m` by increasing size, then
/// lexicographically.
fn objective_subsets(m: usize) -> Vec<Vec<usize>> {
    (1..m)
        .flat_map(|k| crate::Combinations::new(m, k))
        .collect()
}

/// Phase two: up to `budget` sweeps over the archive.
///
/// Each entry `x_c` still present at its turn takes a common descent step
/// on its support (Armijo, or no step when `θ_J(x_c) ≥ −theta_tol`); the
/// result `z` is inserted and the mates it dominates are evicted. While `z`
/// survives, each objective subset `I` with `θ^I_J(z) < −theta_tol` triggers
/// an exploration along `d^I_J(z)` whose step must beat every current mate
/// in at least one objective; an accepted point is inserted the same way.
/// The crowding filter, evaluated on the key's entries at the start of the
/// sweep, decides which entries explore at all.
pub fn sfsd_run<P: MultiObjectiveProblem + ?Sized>(
    p: &P,
    archive0: ParetoArchive,
    s: usize,
    cfg: &SfsdConfig,
    budget: usize,
) -> Result<SfsdOutcome> {
    archive0.validate(s)?;
    cfg.crowding.validate()?;
    if !(cfg.theta_tol >= 0.0) {
        return Err(usage!("theta tolerance must be nonnegative"));
    }
    let m = p.num_objectives();
    let all: Vec<usize> = (0..m).collect();
    let subsets = objective_subsets(m);
    let mut archive = archive0;
    let mut sweeps = 0;
    let mut stop = SfsdStop::Budget;
    while sweeps < budget {
        if cfg.interrupt.as_ref().is_some_and(Interrupt::fired) {
            stop = SfsdStop::Interrupted;
            break;
        }
        let before = archive.clone();
        let keys: Vec<SupportSet> = archive.keys().cloned().collect();
        for key in &keys {
            let snapshot: Vec<ArchiveEntry> = archive.group(key).to_vec();
            let fvals: Vec<&[f64]> = snapshot.iter().map(|e| e.f.as_slice()).collect();
            let explore = cfg.crowding.admits(&crowding_distance(&fvals), cfg.min_crowding);
            for (entry, may_explore) in snapshot.into_iter().zip(explore) {
                if !archive.contains(key, &entry.x) {
                    continue;
                }
                let sol = subspace_with_gradients(&p.gradients(&entry.x), key, &all);
                let z = if sol.theta < -cfg.theta_tol {
                    let alpha = armijo_from(p, &entry.x, &entry.f, &sol.d, sol.theta, &all, &cfg.armijo);
                    if alpha > 0.0 {
                        let x = add_scaled(&entry.x, alpha, &sol.d);
                        let f = p.evaluate(&x);
                        let z = ArchiveEntry { x, support: key.clone(), f };
                        archive.insert(z.clone());
                        z
                    } else {
                        entry
                    }
                } else {
                    entry
                };
                if may_explore {
                    explore_from(p, &mut archive, &z, &subsets, cfg);
                }
            }
        }
        sweeps += 1;
        if cfg.stop_on_no_change && archive == before {
            stop = SfsdStop::NoChange;
            break;
        }
    }
    if let Some(tol) = cfg.final_descent {
        archive = final_descent(p, archive, tol, cfg);
    }
    debug_assert!(archive.validate(s).is_ok());
    Ok(SfsdOutcome {
        archive,
        sweeps,
        stop,
    })
}

fn explore_from<P: MultiObjectiveProblem + ?Sized>(
    p: &P,
    archive: &mut ParetoArchive,
    z: &ArchiveEntry,
    subsets: &[Vec<usize>],
    cfg: &SfsdConfig,
) {
    let key = &z.support;
    let grads = p.gradients(&z.x);
    for objectives in subsets {
        if !archive.contains(key, &z.x) {
            return;
        }
        let sol = subspace_with_gradients(&grads, key, objectives);
        if !(sol.theta < -cfg.theta_tol) {
            continue;
        }
        let mut alpha = cfg.armijo.alpha0;
        for _ in 0..=cfg.armijo.max_backtracks {
            let x = add_scaled(&z.x, alpha, &sol.d);
            let f = p.evaluate(&x);
            let beats_all = archive
                .group(key)
                .iter()
                .all(|y| f.iter().zip(&y.f).any(|(a, b)| a < b));
            if beats_all {
                archive.insert(ArchiveEntry { x, support: key.clone(), f });
                break;
            }
            alpha *= cfg.armijo.delta;
        }
    }
}

/// Common descent only, entry by entry, until `θ_J ≥ −tol`. A refined
/// point dominates the one it replaces, so it cannot be dominated by a
/// mate; it is dropped only when it duplicates one.
fn final_descent<P: MultiObjectiveProblem + ?Sized>(
    p: &P,
    mut archive: ParetoArchive,
    tol: f64,
    cfg: &SfsdConfig,
) -> ParetoArchive {
    let solver = SolverConfig {
        armijo: cfg.armijo,
        max_iter: cfg.final_max_iter,
        interrupt: None,
        ..SolverConfig::quadratic(1.0)
    };
    let entries: Vec<ArchiveEntry> = archive.entries().cloned().collect();
    for entry in entries {
        if !archive.contains(&entry.support, &entry.x) {
            continue;
        }
        let run = mosd_unchecked(p, entry.x.clone(), &entry.support, tol, &solver);
        if run.x != entry.x {
            archive.remove(&entry.support, &entry.x);
            let f = p.evaluate(&run.x);
            archive.insert(ArchiveEntry { x: run.x, support: entry.support, f });
        }
    }
    archive
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_order() {
        assert_eq!(objective_subsets(2), alloc::vec![alloc::vec![0], alloc::vec![1]]);
        assert_eq!(
            objective_subsets(3),
            alloc::vec![
                alloc::vec![0],
                alloc::vec![1],
                alloc::vec![2],
                alloc::vec![0, 1],
                alloc::vec![0, 2],
                alloc::vec![1, 2]
            ]
        );
        assert!(objective_subsets(1).is_empty());
    }
}
