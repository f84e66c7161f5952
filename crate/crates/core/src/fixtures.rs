//! Small hand-checkable problems shared by tests, benches and the CLI.

use nalgebra::{DMatrix, DVector};

use crate::linalg::KreinSignature;
use crate::solver::problem::Problem;
use crate::tolerance::ToleranceConfig;

/// `A = diag(1, −β, 1)`, `B = diag(α, 1, −1)`, `z0 = 0`, with `w0` chosen so
/// that `T#w0 = rhs`.
pub fn generalized_example(alpha: f64, beta: f64, rhs: &[f64; 3]) -> Problem {
    let sb = beta.sqrt();
    let t = DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, sb, 1.0]));
    let v = DMatrix::from_diagonal(&DVector::from_vec(vec![alpha.sqrt(), 1.0, 1.0]));
    let w0 = DVector::from_vec(vec![rhs[0], -rhs[1] / sb, rhs[2]]);
    Problem::new(
        t,
        KreinSignature::from_signs(&[1.0, -1.0, 1.0]).expect("valid signs"),
        v,
        KreinSignature::from_signs(&[1.0, 1.0, -1.0]).expect("valid signs"),
        w0,
        DVector::zeros(3),
        ToleranceConfig::default(),
    )
    .expect("valid fixture")
}

/// `A = diag(1, −1/2, 1)`, `B = diag(4, 1, −1)`; PSD interval `[1/2, 1]`.
pub fn example_problem(rhs: &[f64; 3]) -> Problem {
    generalized_example(4.0, 0.5, rhs)
}
