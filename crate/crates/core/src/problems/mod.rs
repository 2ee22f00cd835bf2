//! Benchmark problems: random bi-objective quadratics with a prescribed
//! condition number, the two-dimensional illustration problem used
//! throughout the test-suite, and sparse logistic regression.

mod logistic;
mod quadratic;

pub use logistic::LogisticProblem;
pub use quadratic::{
    example4, generate_quadratic, QuadraticInstance, QuadraticObjective, QuadraticProblem,
};
