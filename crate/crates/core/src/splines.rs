//! Mixed splines: minimize `[Ux, Ux]_1 + μ[Wx − w0, Wx − w0]_2` under the
//! quadratic constraint, rewritten as a [`Problem`] by stacking `T = (U, W)`.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg::{self, KreinSignature};
use crate::solver::problem::Problem;
use crate::tolerance::ToleranceConfig;

#[derive(Debug, Clone, PartialEq)]
pub struct MixedSplinesProblem {
    pub u: DMatrix<f64>,
    pub j1: KreinSignature,
    pub w: DMatrix<f64>,
    pub j2: KreinSignature,
    pub v: DMatrix<f64>,
    pub je: KreinSignature,
    pub mu: f64,
    pub w0: DVector<f64>,
    pub z0: DVector<f64>,
    pub tol: ToleranceConfig,
}

impl MixedSplinesProblem {
    /// `[Ux, Ux]_1 + μ[Wx − w0, Wx − w0]_2`.
    pub fn objective(&self, x: &DVector<f64>) -> f64 {
        self.j1.quad(&(&self.u * x)) + self.mu * self.j2.quad(&(&self.w * x - &self.w0))
    }
}

/// `T = (U; W)`, `J_K = diag(J1, μ·J2)`, target `(0, w0)`.
pub fn build_problem(msp: &MixedSplinesProblem) -> Result<Problem> {
    if msp.mu == 0.0 || !msp.mu.is_finite() {
        return Err(Error::InvalidProblem(format!("mu must be a nonzero finite number, got {}", msp.mu)));
    }
    let n = msp.u.ncols();
    if msp.w.ncols() != n || msp.v.ncols() != n {
        return Err(Error::DimensionMismatch(format!(
            "U, W, V have {}, {}, {} columns",
            n,
            msp.w.ncols(),
            msp.v.ncols()
        )));
    }
    if msp.j1.dim() != msp.u.nrows() || msp.j2.dim() != msp.w.nrows() || msp.w0.len() != msp.w.nrows() {
        return Err(Error::DimensionMismatch("U/J1 or W/J2/w0 dimensions disagree".into()));
    }
    let t = linalg::vstack(&msp.u, &msp.w);
    let jk = msp.j1.block_diag(&msp.j2, msp.mu)?;
    let mut target = DVector::zeros(t.nrows());
    target.rows_mut(msp.u.nrows(), msp.w.nrows()).copy_from(&msp.w0);
    Problem::new(t, jk, msp.v.clone(), msp.je.clone(), target, msp.z0.clone(), msp.tol)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SurjectivityReport {
    pub dim_null_u: usize,
    pub dim_null_w: usize,
    pub dim_intersection: usize,
    pub n: usize,
    /// `N(U) + N(W)` is the whole space, i.e. `(U; W)` is onto.
    pub surjective: bool,
}

pub fn check_t_surjective(u: &DMatrix<f64>, w: &DMatrix<f64>, tol: &ToleranceConfig) -> SurjectivityReport {
    let n = u.ncols();
    let dim_null_u = linalg::nullspace_basis(u, tol).ncols();
    let dim_null_w = linalg::nullspace_basis(w, tol).ncols();
    let dim_intersection = linalg::nullspace_basis(&linalg::vstack(u, w), tol).ncols();
    SurjectivityReport {
        dim_null_u,
        dim_null_w,
        dim_intersection,
        n,
        surjective: dim_null_u + dim_null_w - dim_intersection == n,
    }
}
