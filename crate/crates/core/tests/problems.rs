use nalgebra::{DMatrix, SymmetricEigen};
use proptest::prelude::*;
use rand::Rng;
use sparsemoo::problems::{generate_quadratic, LogisticProblem};
use sparsemoo::{rng, MultiObjectiveProblem};

fn central_difference(p: &impl MultiObjectiveProblem, x: &[f64], j: usize, i: usize) -> f64 {
    let h = 1e-6 * (1.0 + x[i].abs());
    let mut a = x.to_vec();
    let mut b = x.to_vec();
    a[i] += h;
    b[i] -= h;
    (p.evaluate(&a)[j] - p.evaluate(&b)[j]) / (2.0 * h)
}

fn assert_gradients(p: &impl MultiObjectiveProblem, x: &[f64], rel: f64) {
    let g = p.gradients(x);
    for (j, gj) in g.iter().enumerate() {
        for i in 0..x.len() {
            let fd = central_difference(p, x, j, i);
            let scale = gj.iter().map(|v| v.abs()).fold(1.0, f64::max);
            assert!((fd - gj[i]).abs() <= rel * scale, "objective {} coord {}: {} vs {}", j, i, fd, gj[i]);
        }
    }
}

fn eigenvalues(q: &[f64], n: usize) -> Vec<f64> {
    let mut e: Vec<f64> = SymmetricEigen::new(DMatrix::from_row_slice(n, n, q)).eigenvalues.iter().copied().collect();
    e.sort_by(f64::total_cmp);
    e
}

fn random_design(rows: usize, cols: usize, seed: u64) -> (Vec<f64>, Vec<f64>) {
    let mut g = rng::stream(seed, 3);
    let r: Vec<f64> = (0..rows * cols).map(|_| g.random::<f64>() * 2.0 - 1.0).collect();
    let t: Vec<f64> = (0..rows).map(|_| if g.random::<bool>() { 1.0 } else { -1.0 }).collect();
    (r, t)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn quadratic_spectrum_and_symmetry(n in 2usize..12, seed in any::<u64>(), kappa in 1.0f64..200.0) {
        let inst = generate_quadratic(n, kappa, seed).unwrap();
        for o in inst.problem.objectives() {
            for i in 0..n {
                for j in 0..n {
                    prop_assert_eq!(o.q[i * n + j], o.q[j * n + i]);
                }
            }
            let e = eigenvalues(&o.q, n);
            prop_assert!((e[0] - 1.0).abs() <= 1e-8 * kappa);
            prop_assert!((e[n - 1] - kappa).abs() <= 1e-8 * kappa);
            prop_assert!(((e[n - 1] / e[0]) - kappa).abs() <= 1e-6 * kappa);
        }
        prop_assert_eq!(inst.problem.lipschitz(), vec![kappa, kappa]);
    }

    #[test]
    fn quadratic_gradients(n in 2usize..10, seed in any::<u64>(), x in prop::collection::vec(-2.0f64..2.0, 10)) {
        let inst = generate_quadratic(n, 10.0, seed).unwrap();
        assert_gradients(&inst.problem, &x[..n], 1e-6);
    }

    #[test]
    fn logistic_gradients_and_convexity(seed in any::<u64>(), w in prop::collection::vec(-3.0f64..3.0, 8), v in prop::collection::vec(-3.0f64..3.0, 8)) {
        let (r, t) = random_design(40, 8, seed);
        let p = LogisticProblem::new(r, 40, 8, t).unwrap();
        assert_gradients(&p, &w, 1e-5);
        let mid: Vec<f64> = w.iter().zip(&v).map(|(a, b)| 0.5 * (a + b)).collect();
        let (fw, fv, fm) = (p.evaluate(&w)[0], p.evaluate(&v)[0], p.evaluate(&mid)[0]);
        prop_assert!(fm <= 0.5 * (fw + fv) + 1e-12);
    }
}

#[test]
fn logistic_lipschitz_matches_dense_eigenvalues() {
    for seed in 0..5 {
        let (r, t) = random_design(60, 7, seed);
        let p = LogisticProblem::new(r.clone(), 60, 7, t).unwrap();
        let m = DMatrix::from_row_slice(60, 7, &r);
        let gram = m.transpose() * &m;
        let e = eigenvalues(gram.as_slice(), 7);
        assert!((p.lipschitz()[0] - e[6] / 60.0).abs() <= 1e-9 * e[6]);
        assert_eq!(p.lipschitz()[1], 1.0);
    }
}
