use alloc::vec;
use alloc::vec::Vec;

use super::{Front, FrontRow};
use crate::error::usage;
use crate::linalg::{dist, inf_dist};
use crate::Result;

/// Two objective vectors within this `∞`-distance count as the same.
pub const PURITY_TOL: f64 = 1e-9;

/// Fraction of the front's rows that appear in the reference front.
pub fn purity(front: &Front, reference: &Front) -> Result<f64> {
    if reference.is_empty() {
        return Err(usage!("purity needs a nonempty reference front"));
    }
    if front.is_empty() {
        return Ok(0.0);
    }
    let hits = front
        .values()
        .filter(|f| reference.values().any(|r| inf_dist(f, r) <= PURITY_TOL))
        .count();
    Ok(hits as f64 / front.len() as f64)
}

/// For each objective, the reference row with the smallest value (ties go
/// to the smaller value in the remaining objectives, lexicographically).
fn extremes(reference: &Front) -> Vec<Vec<f64>> {
    let m = reference.num_objectives().unwrap_or(0);
    (0..m)
        .filter_map(|j| {
            reference
                .values()
                .min_by(|a, b| {
                    a[j].total_cmp(&b[j]).then_with(|| {
                        a.iter()
                            .zip(b.iter())
                            .map(|(x, y)| x.total_cmp(y))
                            .find(|o| o.is_ne())
                            .unwrap_or(core::cmp::Ordering::Equal)
                    })
                })
                .map(<[f64]>::to_vec)
        })
        .collect()
}

/// Γ-spread: largest gap between consecutive values of any objective over
/// the front augmented with the reference extremes. `+∞` for an empty
/// front.
pub fn gamma_spread(front: &Front, reference: &Front) -> Result<f64> {
    if reference.is_empty() {
        return Err(usage!("spread needs a nonempty reference front"));
    }
    if front.is_empty() {
        return Ok(f64::INFINITY);
    }
    let mut points: Vec<Vec<f64>> = front.values().map(<[f64]>::to_vec).collect();
    points.extend(extremes(reference));
    let m = points[0].len();
    let mut gamma: f64 = 0.0;
    for j in 0..m {
        let mut col: Vec<f64> = points.iter().map(|p| p[j]).collect();
        col.sort_by(f64::total_cmp);
        for w in col.windows(2) {
            gamma = gamma.max(w[1] - w[0]);
        }
    }
    Ok(gamma)
}

/// Δ-spread for two objectives; `+∞` for fewer than two points.
pub fn delta_spread(front: &Front, reference: &Front) -> Result<f64> {
    if reference.is_empty() {
        return Err(usage!("spread needs a nonempty reference front"));
    }
    if reference.num_objectives() != Some(2) || front.num_objectives().is_some_and(|m| m != 2) {
        return Err(usage!("delta spread is defined for two objectives"));
    }
    if front.len() < 2 {
        return Ok(f64::INFINITY);
    }
    let mut points: Vec<&[f64]> = front.values().collect();
    points.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    let ext = extremes(reference);
    let d0 = dist(points[0], &ext[0]);
    let dn = dist(points[points.len() - 1], &ext[1]);
    let gaps: Vec<f64> = points.windows(2).map(|w| dist(w[0], w[1])).collect();
    let mean = gaps.iter().sum::<f64>() / gaps.len() as f64;
    let num = d0 + dn + gaps.iter().map(|d| libm::fabs(d - mean)).sum::<f64>();
    let den = d0 + dn + gaps.len() as f64 * mean;
    Ok(if den > 0.0 { num / den } else { 0.0 })
}

/// Area dominated by the front and bounded by `ref_point`. Rows not
/// strictly below the reference point in both objectives are ignored.
pub fn hypervolume_2d(front: &Front, ref_point: &[f64]) -> Result<f64> {
    if ref_point.len() != 2 || front.num_objectives().is_some_and(|m| m != 2) {
        return Err(usage!("hypervolume is implemented for two objectives"));
    }
    let mut pts: Vec<[f64; 2]> = front
        .values()
        .filter(|f| f[0] < ref_point[0] && f[1] < ref_point[1])
        .map(|f| [f[0], f[1]])
        .collect();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    let mut area = 0.0;
    let mut ceiling = ref_point[1];
    for p in pts {
        if p[1] < ceiling {
            area += (ref_point[0] - p[0]) * (ceiling - p[1]);
            ceiling = p[1];
        }
    }
    Ok(area)
}

/// Reference point for hypervolume: per objective, the maximum over all
/// rows plus a tenth of `max(|max|, max − min)` (or plus 1 when both are 0).
pub fn default_reference_point(fronts: &[Front]) -> Option<Vec<f64>> {
    let m = fronts.iter().find_map(Front::num_objectives)?;
    let mut lo = vec![f64::INFINITY; m];
    let mut hi = vec![f64::NEG_INFINITY; m];
    for f in fronts.iter().flat_map(Front::values) {
        for j in 0..m {
            lo[j] = lo[j].min(f[j]);
            hi[j] = hi[j].max(f[j]);
        }
    }
    Some(
        (0..m)
            .map(|j| {
                let margin = libm::fabs(hi[j]).max(hi[j] - lo[j]);
                hi[j] + if margin > 0.0 { 0.1 * margin } else { 1.0 }
            })
            .collect(),
    )
}

/// Logistic-mode preprocessing for the spreads: `f₂ ← log₁₀ f₂`, then both
/// objectives min-max rescaled to `[0, 1]` with bounds taken over all the
/// given fronts together. A constant objective maps to 0.
///
/// `f₂ = 0` (the point `w = 0`) has no logarithm; such values are raised to
/// the smallest positive `f₂` present before taking logs.
pub fn log_rescale(fronts: &[Front]) -> Result<Vec<Front>> {
    if fronts.iter().any(|f| f.num_objectives().is_some_and(|m| m != 2)) {
        return Err(usage!("log rescaling needs two objectives"));
    }
    let all = || fronts.iter().flat_map(Front::values);
    if all().any(|f| f[1] < 0.0) {
        return Err(usage!("log rescaling needs f2 >= 0"));
    }
    let floor = all().map(|f| f[1]).filter(|v| *v > 0.0).fold(f64::INFINITY, f64::min);
    if all().next().is_some() && floor == f64::INFINITY {
        return Err(usage!("log rescaling needs at least one positive f2"));
    }
    let logged: Vec<Vec<Vec<f64>>> = fronts
        .iter()
        .map(|front| front.values().map(|f| vec![f[0], libm::log10(f[1].max(floor))]).collect())
        .collect();
    let mut lo = [f64::INFINITY; 2];
    let mut hi = [f64::NEG_INFINITY; 2];
    for f in logged.iter().flatten() {
        for j in 0..2 {
            lo[j] = lo[j].min(f[j]);
            hi[j] = hi[j].max(f[j]);
        }
    }
    logged
        .into_iter()
        .zip(fronts)
        .map(|(vals, front)| {
            let rows = vals
                .into_iter()
                .zip(front.rows())
                .map(|(v, row)| FrontRow {
                    f: (0..2)
                        .map(|j| if hi[j] > lo[j] { (v[j] - lo[j]) / (hi[j] - lo[j]) } else { 0.0 })
                        .collect(),
                    ..row.clone()
                })
                .collect();
            Front::new(rows)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn front(v: &[[f64; 2]]) -> Front {
        Front::from_values(v.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn purity_examples() {
        let r = front(&[[1.0, 1.0], [0.0, 2.0]]);
        assert_eq!(purity(&front(&[[1.0, 1.0]]), &r).unwrap(), 1.0);
        assert_eq!(purity(&front(&[[2.0, 2.0]]), &front(&[[1.0, 1.0]])).unwrap(), 0.0);
        assert_eq!(purity(&front(&[[1.0, 1.0], [5.0, 5.0]]), &r).unwrap(), 0.5);
        assert_eq!(purity(&front(&[]), &r).unwrap(), 0.0);
        assert_eq!(purity(&r, &r).unwrap(), 1.0);
        assert!(purity(&r, &front(&[])).is_err());
    }

    #[test]
    fn gamma_examples() {
        let f = front(&[[0.0, 2.0], [1.0, 1.0], [3.0, 0.0]]);
        assert_eq!(gamma_spread(&f, &f).unwrap(), 2.0);
        let one = front(&[[1.0, 1.0]]);
        assert_eq!(gamma_spread(&one, &one).unwrap(), 0.0);
        let grid = front(&[[0.0, 1.0], [0.25, 0.75], [0.5, 0.5], [0.75, 0.25], [1.0, 0.0]]);
        assert_eq!(gamma_spread(&grid, &grid).unwrap(), 0.25);
        assert_eq!(gamma_spread(&front(&[]), &f).unwrap(), f64::INFINITY);
    }

    #[test]
    fn delta_examples() {
        // Three equidistant points; the reference extremes sit one gap
        // beyond each end.
        let f = front(&[[1.0, 3.0], [2.0, 2.0], [3.0, 1.0]]);
        let r = front(&[[0.0, 4.0], [4.0, 0.0]]);
        assert_abs_diff_eq!(delta_spread(&f, &r).unwrap(), 0.5, epsilon = 1e-15);
        assert_eq!(delta_spread(&f, &f).unwrap(), 0.0);
        assert_eq!(delta_spread(&front(&[[1.0, 1.0]]), &f).unwrap(), f64::INFINITY);
    }

    #[test]
    fn hypervolume_examples() {
        let f = front(&[[1.0, 3.0], [2.0, 2.0], [3.0, 1.0]]);
        assert_eq!(hypervolume_2d(&f, &[4.0, 4.0]).unwrap(), 6.0);
        assert_eq!(hypervolume_2d(&front(&[]), &[4.0, 4.0]).unwrap(), 0.0);
        assert_eq!(hypervolume_2d(&front(&[[1.0, 1.0]]), &[2.0, 2.0]).unwrap(), 1.0);
        // Dominated and out-of-box rows change nothing.
        let g = front(&[[1.0, 3.0], [2.0, 2.0], [3.0, 1.0], [2.5, 2.5], [5.0, 0.0]]);
        assert_eq!(hypervolume_2d(&g, &[4.0, 4.0]).unwrap(), 6.0);
    }

    #[test]
    fn reference_point_rule() {
        let f = front(&[[1.0, -2.0], [3.0, -4.0]]);
        let r = default_reference_point(&[f]).unwrap();
        assert_abs_diff_eq!(r[0], 3.3, epsilon = 1e-12);
        assert_abs_diff_eq!(r[1], -1.8, epsilon = 1e-12);
        assert_eq!(default_reference_point(&[front(&[[0.0, 0.0]])]).unwrap(), vec![1.0, 1.0]);
        assert!(default_reference_point(&[]).is_none());
    }

    #[test]
    fn log_rescale_maps_to_unit_box() {
        let a = front(&[[0.5, 10.0], [0.2, 1000.0]]);
        let b = front(&[[0.7, 1.0]]);
        let out = log_rescale(&[a, b]).unwrap();
        assert_abs_diff_eq!(out[0].rows()[0].f.as_slice(), [0.6, 1.0 / 3.0].as_slice(), epsilon = 1e-12);
        assert_abs_diff_eq!(out[0].rows()[1].f.as_slice(), [0.0, 1.0].as_slice(), epsilon = 1e-12);
        assert_abs_diff_eq!(out[1].rows()[0].f.as_slice(), [1.0, 0.0].as_slice(), epsilon = 1e-12);
        assert!(log_rescale(&[front(&[[1.0, 0.0]])]).is_err());
        assert!(log_rescale(&[front(&[[1.0, -1.0], [0.0, 1.0]])]).is_err());
        let out = log_rescale(&[front(&[[2.0, 0.0], [1.0, 10.0], [0.0, 100.0]])]).unwrap();
        let f2: Vec<f64> = out[0].values().map(|f| f[1]).collect();
        assert_eq!(f2, vec![0.0, 0.0, 1.0]);
    }
}
