use alloc::vec;
use alloc::vec::Vec;

use crate::error::usage;
use crate::Result;

/// Which archive points may start partial-descent explorations.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CrowdingFilter {
    /// Every point explores.
    Off,
    /// Points whose crowding distance is below the mean of the finite
    /// distances in their key are skipped; boundary points always explore.
    Mean,
    /// As `Mean`, with the given quantile of the finite distances as the
    /// threshold.
    Quantile(f64),
}

impl CrowdingFilter {
    pub fn validate(self) -> Result<()> {
        match self {
            CrowdingFilter::Quantile(q) if !(0.0..=1.0).contains(&q) => {
                Err(usage!("crowding quantile must lie in [0, 1], got {}", q))
            }
            _ => Ok(()),
        }
    }

    /// Per-point exploration flags for one key. Unless the filter is off,
    /// distances below `floor` never explore.
    pub(crate) fn admits(self, distances: &[f64], floor: f64) -> Vec<bool> {
        let mut finite: Vec<f64> = distances.iter().copied().filter(|d| d.is_finite()).collect();
        let threshold = match self {
            CrowdingFilter::Off => return vec![true; distances.len()],
            _ if finite.is_empty() => f64::NEG_INFINITY,
            CrowdingFilter::Mean => finite.iter().sum::<f64>() / finite.len() as f64,
            CrowdingFilter::Quantile(q) => {
                finite.sort_by(f64::total_cmp);
                let pos = q * (finite.len() - 1) as f64;
                let lo = libm::floor(pos) as usize;
                let hi = libm::ceil(pos) as usize;
                finite[lo] + (pos - lo as f64) * (finite[hi] - finite[lo])
            }
        };
        distances
            .iter()
            .map(|&d| d >= threshold && d >= floor)
            .collect()
    }
}

/// Crowding distance of each objective vector within the set: per
/// objective, the two extreme points get `+∞` and interior points add
/// `(next − prev)/(max − min)`; an objective with `max = min` adds nothing.
pub fn crowding_distance<V: AsRef<[f64]>>(fvals: &[V]) -> Vec<f64> {
    let k = fvals.len();
    let mut dist = vec![0.0; k];
    if k == 0 {
        return dist;
    }
    let m = fvals[0].as_ref().len();
    let mut order: Vec<usize> = (0..k).collect();
    for j in 0..m {
        let val = |i: usize| fvals[i].as_ref()[j];
        order.sort_by(|&a, &b| val(a).total_cmp(&val(b)).then(a.cmp(&b)));
        dist[order[0]] = f64::INFINITY;
        dist[order[k - 1]] = f64::INFINITY;
        let range = val(order[k - 1]) - val(order[0]);
        if range > 0.0 {
            for w in order.windows(3) {
                dist[w[1]] += (val(w[2]) - val(w[0])) / range;
            }
        }
    }
    dist
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let d = crowding_distance(&[[0.0, 2.0], [1.0, 1.0], [2.0, 0.0]]);
        assert_eq!(d, vec![f64::INFINITY, 2.0, f64::INFINITY]);
        assert_eq!(crowding_distance(&[[1.0, 1.0]]), vec![f64::INFINITY]);
        assert_eq!(crowding_distance(&[[1.0, 1.0], [0.0, 2.0]]), vec![f64::INFINITY; 2]);
    }

    #[test]
    fn degenerate_objective_adds_nothing() {
        let d = crowding_distance(&[[0.0, 5.0], [1.0, 5.0], [3.0, 5.0], [4.0, 5.0]]);
        assert!(d[1] == 0.75 && d[2] == 0.75);
    }

    #[test]
    fn filters() {
        let d = [f64::INFINITY, 1.0, 3.0, f64::INFINITY];
        assert_eq!(CrowdingFilter::Off.admits(&d, 5.0), vec![true; 4]);
        assert_eq!(CrowdingFilter::Mean.admits(&d, 0.0), vec![true, false, true, true]);
        assert_eq!(CrowdingFilter::Mean.admits(&d, 4.0), vec![true, false, false, true]);
        assert_eq!(CrowdingFilter::Quantile(0.0).admits(&d, 0.0), vec![true; 4]);
        assert_eq!(CrowdingFilter::Quantile(0.75).admits(&d, 0.0), vec![true, false, true, true]);
        assert_eq!(CrowdingFilter::Mean.admits(&[f64::INFINITY; 2], 1.0), vec![true; 2]);
        assert!(CrowdingFilter::Quantile(1.5).validate().is_err());
    }
}
