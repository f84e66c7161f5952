#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use qp1qec::{KreinSignature, Problem, ToleranceConfig};

pub fn diag(v: &[f64]) -> DMatrix<f64> {
    DMatrix::from_diagonal(&DVector::from_row_slice(v))
}

pub fn vector(v: &[f64]) -> DVector<f64> {
    DVector::from_row_slice(v)
}

pub fn signs(v: &[f64]) -> KreinSignature {
    KreinSignature::from_signs(v).unwrap()
}

/// `A = diag(−1, 0)`, `B = diag(1, −1)`: no multiplier makes `A + ρB` PSD.
pub fn empty_interval_problem() -> Problem {
    Problem::new(
        DMatrix::from_row_slice(1, 2, &[1.0, 0.0]),
        signs(&[-1.0]),
        DMatrix::identity(2, 2),
        signs(&[1.0, -1.0]),
        vector(&[0.5]),
        vector(&[0.3, -0.2]),
        ToleranceConfig::default(),
    )
    .unwrap()
}

/// `A = B = diag(1, −1)` with `w0 = z0 = (1, 0)`: PSD only at `ρ = −1`, where
/// the normal equation is `0 = 0` and the constraint has roots `(0, ±1)`.
pub fn point_solved_problem() -> Problem {
    Problem::new(
        DMatrix::identity(2, 2),
        signs(&[1.0, -1.0]),
        DMatrix::identity(2, 2),
        signs(&[1.0, -1.0]),
        vector(&[1.0, 0.0]),
        vector(&[1.0, 0.0]),
        ToleranceConfig::default(),
    )
    .unwrap()
}

/// `A = diag(0, 1, 1)`, `B = [[0, 1, 0], [1, 0, 0], [0, 0, 1]]`: PSD only at
/// `ρ = 0`. The pseudoinverse solution there is `x̂ = (0, 1, 0)` and along
/// `x̂ + c·e1` the constraint is the constant `1`, so the Lagrangian bound `0`
/// is approached but never attained.
pub fn point_unattained_problem() -> Problem {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let v = DMatrix::from_row_slice(3, 3, &[h, h, 0.0, h, -h, 0.0, 0.0, 0.0, 1.0]);
    Problem::new(
        DMatrix::from_row_slice(2, 3, &[0.0, 1.0, 0.0, 0.0, 0.0, 1.0]),
        KreinSignature::identity(2),
        v,
        signs(&[1.0, -1.0, 1.0]),
        vector(&[1.0, 0.0]),
        vector(&[std::f64::consts::SQRT_2, 0.0, 1.0]),
        ToleranceConfig::default(),
    )
    .unwrap()
}

/// `A = diag(1, 1, 0)`, `B = diag(1, −1, 0)` with `N(T) ∩ N(V) = {0}`: the
/// interval `[−1, 1]` is proper but `A + ρB` stays singular inside it.
pub fn singular_m_problem() -> Problem {
    let t = DMatrix::from_row_slice(4, 3, &[1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 1.0]);
    let v = DMatrix::from_row_slice(2, 3, &[1.0, 0.0, 0.0, 0.0, 1.0, 0.0]);
    Problem::new(
        t,
        signs(&[1.0, 1.0, 1.0, -1.0]),
        v,
        signs(&[1.0, -1.0]),
        vector(&[0.5, 0.2, 1.0, 0.3]),
        vector(&[0.4, 0.1]),
        ToleranceConfig::default(),
    )
    .unwrap()
}

/// Seeded planted instance with `2 ≤ n ≤ 8`, an occasional kernel in `G`
/// and no common nullspace.
pub fn random_instance(seed: u64) -> Problem {
    use qp1qec::generate::{planted_problem, GeneratorConfig};
    let n = 2 + (seed % 7) as usize;
    let kernel_dim = if n > 3 && seed.is_multiple_of(3) { 1 } else { 0 };
    planted_problem(&GeneratorConfig { kernel_dim, ..GeneratorConfig::new(n) }, seed).unwrap()
}
