use alloc::vec::Vec;

use crate::error::usage;
use crate::Result;

/// Pareto dominance for minimization: `u ≤ v` componentwise and `u ≠ v`.
pub fn dominates(u: &[f64], v: &[f64]) -> Result<bool> {
    if u.len() != v.len() {
        return Err(usage!(
            "objective vectors of different lengths ({} vs {})",
            u.len(),
            v.len()
        ));
    }
    Ok(dominates_unchecked(u, v))
}

#[inline]
pub(crate) fn dominates_unchecked(u: &[f64], v: &[f64]) -> bool {
    let mut strict = false;
    for (a, b) in u.iter().zip(v) {
        if a > b {
            return false;
        }
        if a < b {
            strict = true;
        }
    }
    strict
}

/// Indices of the vectors not dominated by any other. Exact duplicates are
/// all kept.
pub fn filter_nondominated<V: AsRef<[f64]>>(points: &[V]) -> Vec<usize> {
    (0..points.len())
        .filter(|&i| {
            !points
                .iter()
                .any(|p| dominates_unchecked(p.as_ref(), points[i].as_ref()))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        assert!(dominates(&[1.0, 2.0], &[1.0, 3.0]).unwrap());
        assert!(!dominates(&[1.0, 2.0], &[1.0, 2.0]).unwrap());
        assert!(!dominates(&[1.0, 3.0], &[2.0, 2.0]).unwrap());
        assert!(dominates(&[1.0], &[1.0, 2.0]).is_err());
    }

    #[test]
    fn filtering() {
        let pts = vec![vec![1.0, 2.0], vec![2.0, 1.0], vec![2.0, 2.0]];
        assert_eq!(filter_nondominated(&pts), vec![0, 1]);
        let same = vec![vec![1.0, 1.0]; 3];
        assert_eq!(filter_nondominated(&same), vec![0, 1, 2]);
        let chain = vec![vec![1.0, 3.0], vec![2.0, 2.0], vec![3.0, 1.0]];
        assert_eq!(filter_nondominated(&chain), vec![0, 1, 2]);
    }

    proptest! {
        #[test]
        fn strict_partial_order(
            a in prop::collection::vec(-3i8..3, 3),
            b in prop::collection::vec(-3i8..3, 3),
            c in prop::collection::vec(-3i8..3, 3),
        ) {
            let f = |v: &Vec<i8>| v.iter().map(|&x| x as f64).collect::<Vec<_>>();
            let (a, b, c) = (f(&a), f(&b), f(&c));
            prop_assert!(!dominates(&a, &a).unwrap());
            if dominates(&a, &b).unwrap() && dominates(&b, &c).unwrap() {
                prop_assert!(dominates(&a, &c).unwrap());
            }
            prop_assert!(!(dominates(&a, &b).unwrap() && dominates(&b, &a).unwrap()));
        }
    }
}
