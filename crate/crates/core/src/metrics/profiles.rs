use alloc::vec::Vec;

use crate::error::data;
use crate::Result;

/// Step function `ρ_s(τ)`: share of problems on which a solver is within a
/// factor `τ` of the best solver. `rho[i]` holds on `[tau[i], tau[i+1])`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProfileCurve {
    pub solver: usize,
    pub tau: Vec<f64>,
    pub rho: Vec<f64>,
}

impl ProfileCurve {
    /// `ρ(τ)` for any `τ ≥ 1`.
    pub fn at(&self, tau: f64) -> f64 {
        match self.tau.iter().rposition(|&t| t <= tau) {
            Some(i) => self.rho[i],
            None => 0.0,
        }
    }
}

/// Performance profiles over a `problems × solvers` table.
///
/// `None`, non-finite entries and (when `higher_is_better`) zeros are
/// failures and never counted. With `higher_is_better` every value is
/// inverted first. All curves share one grid: `1` and every finite ratio.
pub fn performance_profiles(
    values: &[Vec<Option<f64>>],
    higher_is_better: bool,
) -> Result<Vec<ProfileCurve>> {
    let solvers = values.first().map_or(0, Vec::len);
    if values.iter().any(|row| row.len() != solvers) {
        return Err(data!("every problem needs one value per solver"));
    }
    let mut costs: Vec<Vec<Option<f64>>> = Vec::with_capacity(values.len());
    for (i, row) in values.iter().enumerate() {
        let mut out = Vec::with_capacity(solvers);
        for (s, v) in row.iter().enumerate() {
            out.push(match *v {
                Some(v) if v.is_nan() || v == f64::INFINITY => None,
                Some(v) if higher_is_better && v == 0.0 => None,
                Some(v) if v <= 0.0 => {
                    return Err(data!(
                        "value {} for problem {} solver {} is not positive",
                        v,
                        i + 1,
                        s + 1
                    ))
                }
                Some(v) if higher_is_better => Some(1.0 / v),
                other => other,
            });
        }
        costs.push(out);
    }
    let ratios: Vec<Vec<Option<f64>>> = costs
        .iter()
        .map(|row| {
            let best = row.iter().flatten().copied().fold(f64::INFINITY, f64::min);
            row.iter().map(|c| c.map(|c| c / best)).collect()
        })
        .collect();
    let mut grid: Vec<f64> = ratios.iter().flatten().flatten().copied().collect();
    grid.push(1.0);
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    let problems = values.len().max(1) as f64;
    Ok((0..solvers)
        .map(|s| {
            let mut mine: Vec<f64> = ratios.iter().filter_map(|row| row[s]).collect();
            mine.sort_by(f64::total_cmp);
            let mut k = 0;
            let rho = grid
                .iter()
                .map(|&t| {
                    while k < mine.len() && mine[k] <= t {
                        k += 1;
                    }
                    k as f64 / problems
                })
                .collect();
            ProfileCurve {
                solver: s,
                tau: grid.clone(),
                rho,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn time_example() {
        let c = performance_profiles(&[vec![Some(1.0), Some(2.0)], vec![Some(2.0), Some(2.0)]], false)
            .unwrap();
        assert_eq!(c[0].at(1.0), 1.0);
        assert_eq!(c[1].at(1.0), 0.5);
        assert_eq!(c[1].at(2.0), 1.0);
        assert_eq!(c[0].tau, vec![1.0, 2.0]);
    }

    #[test]
    fn single_solver() {
        let c = performance_profiles(&[vec![Some(3.0)], vec![Some(0.1)]], false).unwrap();
        assert_eq!(c[0].at(1.0), 1.0);
    }

    #[test]
    fn inversion_example() {
        let c = performance_profiles(&[vec![Some(1.0), Some(0.5)]], true).unwrap();
        assert_eq!(c[0].at(1.0), 1.0);
        assert_eq!(c[1].at(1.0), 0.0);
        assert_eq!(c[1].at(2.0), 1.0);
    }

    #[test]
    fn failures_are_not_counted() {
        let c = performance_profiles(
            &[vec![Some(1.0), None], vec![Some(0.0), Some(0.5)], vec![Some(1.0), Some(f64::NAN)]],
            true,
        )
        .unwrap();
        assert_eq!(c[1].at(1e9), 1.0 / 3.0);
        assert_eq!(c[0].at(1e9), 2.0 / 3.0);
        assert!(performance_profiles(&[vec![Some(-1.0)]], true).is_err());
        assert!(performance_profiles(&[vec![Some(0.0)]], false).is_err());
    }
}
