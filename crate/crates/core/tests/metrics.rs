use proptest::prelude::*;
use rand::Rng;
use sparsemoo::metrics::{
    build_reference_front, delta_spread, gamma_spread, hypervolume_2d, performance_profiles, purity,
    Front,
};
use sparsemoo::rng;

fn front_strategy() -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::vec(prop::collection::vec(0.0f64..10.0, 2), 1..15)
}

/// Monte-Carlo estimate of the dominated area inside `[lo, ref]`, with its
/// standard error.
fn mc_hypervolume(points: &[Vec<f64>], lo: [f64; 2], r: [f64; 2], samples: usize, seed: u64) -> (f64, f64) {
    let mut g = rng::stream(seed, 9);
    let box_area = (r[0] - lo[0]) * (r[1] - lo[1]);
    let mut hits = 0usize;
    for _ in 0..samples {
        let u = [lo[0] + (r[0] - lo[0]) * g.random::<f64>(), lo[1] + (r[1] - lo[1]) * g.random::<f64>()];
        if points.iter().any(|p| p[0] <= u[0] && p[1] <= u[1]) {
            hits += 1;
        }
    }
    let p = hits as f64 / samples as f64;
    (p * box_area, box_area * (p * (1.0 - p) / samples as f64).sqrt())
}

#[test]
fn hypervolume_matches_monte_carlo() {
    let pts = vec![vec![1.0, 3.0], vec![2.0, 2.0], vec![3.0, 1.0]];
    let (est, se) = mc_hypervolume(&pts, [0.0, 0.0], [4.0, 4.0], 1_000_000, 1);
    let hv = hypervolume_2d(&Front::from_values(pts).unwrap(), &[4.0, 4.0]).unwrap();
    assert_eq!(hv, 6.0);
    assert!((est - hv).abs() <= 3.0 * se.max(1e-12), "{} vs {} ± {}", est, hv, se);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hypervolume_is_monotone(rows in front_strategy(), extra in prop::collection::vec(0.0f64..10.0, 2)) {
        let r = [11.0, 11.0];
        let base = Front::from_values(rows.clone()).unwrap().nondominated();
        let hv = hypervolume_2d(&base, &r).unwrap();
        let mut more = base.values().map(<[f64]>::to_vec).collect::<Vec<_>>();
        more.push(extra);
        let grown = hypervolume_2d(&Front::from_values(more).unwrap(), &r).unwrap();
        prop_assert!(grown >= hv - 1e-12);
    }

    #[test]
    fn spreads_ignore_row_order(rows in front_strategy(), seed in any::<u64>()) {
        let f = Front::from_values(rows.clone()).unwrap();
        let reference = f.nondominated();
        let mut shuffled = rows;
        let mut g = rng::stream(seed, 0);
        for i in (1..shuffled.len()).rev() {
            let j = g.random_range(0..=i);
            shuffled.swap(i, j);
        }
        let s = Front::from_values(shuffled).unwrap();
        prop_assert_eq!(gamma_spread(&f, &reference).unwrap(), gamma_spread(&s, &reference).unwrap());
        let (a, b) = (delta_spread(&f, &reference).unwrap(), delta_spread(&s, &reference).unwrap());
        prop_assert!(a == b || (a - b).abs() <= 1e-12 * a.abs().max(1.0));
        prop_assert_eq!(purity(&reference, &reference).unwrap(), 1.0);
    }

    #[test]
    fn reference_front_is_nondominated(a in front_strategy(), b in front_strategy()) {
        let fa = Front::from_values(a).unwrap();
        let fb = Front::from_values(b).unwrap();
        let r = build_reference_front(&[fa.clone(), fb.clone()]).unwrap();
        for u in r.values() {
            for v in r.values() {
                prop_assert!(!sparsemoo::dominates(u, v).unwrap());
            }
        }
        // Every input row is matched or dominated by some reference row.
        for row in fa.values().chain(fb.values()) {
            prop_assert!(r.values().any(|q| q.iter().zip(row).all(|(x, y)| x <= y)));
        }
    }

    #[test]
    fn profiles_are_monotone(table in prop::collection::vec(prop::collection::vec(prop::option::weighted(0.8, 0.1f64..10.0), 3), 1..10)) {
        let curves = performance_profiles(&table, false).unwrap();
        let max_ratio = curves[0].tau.last().copied().unwrap();
        for (s, c) in curves.iter().enumerate() {
            prop_assert!(c.rho.windows(2).all(|w| w[0] <= w[1]));
            prop_assert!(c.rho.iter().all(|r| (0.0..=1.0).contains(r)));
            let solved = table.iter().filter(|row| row[s].is_some()).count() as f64 / table.len() as f64;
            prop_assert_eq!(c.at(max_ratio), solved);
        }
    }
}
