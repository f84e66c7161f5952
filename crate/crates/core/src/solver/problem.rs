use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg::{self, KreinSignature};
use crate::pencil::{self, FormValues, GramPair};
use crate::tolerance::ToleranceConfig;

/// Minimize `[Tx − w0, Tx − w0]_K` subject to `[Vx − z0, Vx − z0]_E = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Problem {
    pub t: DMatrix<f64>,
    pub jk: KreinSignature,
    pub v: DMatrix<f64>,
    pub je: KreinSignature,
    pub w0: DVector<f64>,
    pub z0: DVector<f64>,
    pub tol: ToleranceConfig,
}

impl Problem {
    /// Validates dimensions, tolerances and surjectivity of `V`.
    pub fn new(
        t: DMatrix<f64>,
        jk: KreinSignature,
        v: DMatrix<f64>,
        je: KreinSignature,
        w0: DVector<f64>,
        z0: DVector<f64>,
        tol: ToleranceConfig,
    ) -> Result<Self> {
        tol.validate()?;
        if t.ncols() != v.ncols() {
            return Err(Error::DimensionMismatch(format!(
                "T has {} columns but V has {}",
                t.ncols(),
                v.ncols()
            )));
        }
        if t.ncols() == 0 {
            return Err(Error::InvalidProblem("empty domain".into()));
        }
        if jk.dim() != t.nrows() || w0.len() != t.nrows() {
            return Err(Error::DimensionMismatch(format!(
                "T is {}x{}, J_K has dimension {}, w0 has length {}",
                t.nrows(),
                t.ncols(),
                jk.dim(),
                w0.len()
            )));
        }
        if je.dim() != v.nrows() || z0.len() != v.nrows() {
            return Err(Error::DimensionMismatch(format!(
                "V is {}x{}, J_E has dimension {}, z0 has length {}",
                v.nrows(),
                v.ncols(),
                je.dim(),
                z0.len()
            )));
        }
        let rank = linalg::numerical_rank(&v, &tol);
        if rank != v.nrows() || v.nrows() == 0 {
            return Err(Error::RankDeficientV { rank, rows: v.nrows() });
        }
        Ok(Self { t, jk, v, je, w0, z0, tol })
    }

    pub fn dim(&self) -> usize {
        self.t.ncols()
    }

    pub fn a(&self) -> DMatrix<f64> {
        linalg::gram(&self.t, &self.jk).expect("dimensions validated")
    }

    pub fn b(&self) -> DMatrix<f64> {
        linalg::gram(&self.v, &self.je).expect("dimensions validated")
    }

    pub fn gram_pair(&self) -> Result<GramPair> {
        GramPair::new(self.a(), self.b(), &self.tol)
    }

    /// `T# w0`.
    pub fn t_adj_w0(&self) -> DVector<f64> {
        self.t.transpose() * (self.jk.matrix() * &self.w0)
    }

    /// `V# z0`.
    pub fn v_adj_z0(&self) -> DVector<f64> {
        self.v.transpose() * (self.je.matrix() * &self.z0)
    }

    /// `1 + ‖A‖_F + ‖B‖_F + ‖w0‖ + ‖z0‖`.
    pub fn scale(&self) -> f64 {
        1.0 + self.a().norm() + self.b().norm() + self.w0.norm() + self.z0.norm()
    }

    pub fn objective(&self, x: &DVector<f64>) -> f64 {
        self.jk.quad(&(&self.t * x - &self.w0))
    }

    pub fn constraint(&self, x: &DVector<f64>) -> f64 {
        self.je.quad(&(&self.v * x - &self.z0))
    }

    /// Gradient of the objective: `2 T#(Tx − w0)`.
    pub fn objective_gradient(&self, x: &DVector<f64>) -> DVector<f64> {
        self.t.transpose() * (self.jk.matrix() * (&self.t * x - &self.w0)) * 2.0
    }

    /// Gradient of the constraint: `2 V#(Vx − z0)`.
    pub fn constraint_gradient(&self, x: &DVector<f64>) -> DVector<f64> {
        self.v.transpose() * (self.je.matrix() * (&self.v * x - &self.z0)) * 2.0
    }

    pub fn forms(&self, x: &DVector<f64>) -> Result<FormValues> {
        pencil::evaluate_forms(&self.t, &self.jk, &self.v, &self.je, &self.w0, &self.z0, x, &self.tol)
    }

    /// Same maps with different data vectors.
    pub fn with_data(&self, w0: DVector<f64>, z0: DVector<f64>) -> Result<Self> {
        Self::new(self.t.clone(), self.jk.clone(), self.v.clone(), self.je.clone(), w0, z0, self.tol)
    }
}

/// The problem restricted to `(N(T) ∩ N(V))^⊥`.
#[derive(Debug, Clone, PartialEq)]
pub struct DeflatedProblem {
    pub problem: Problem,
    /// Orthonormal basis of `N(T) ∩ N(V)`.
    pub null_basis: DMatrix<f64>,
    /// Orthonormal basis of the complement; reduced coordinates `y` map to `Q y`.
    pub q: DMatrix<f64>,
    pub t_r: DMatrix<f64>,
    pub v_r: DMatrix<f64>,
}

impl DeflatedProblem {
    pub fn reduced_dim(&self) -> usize {
        self.q.ncols()
    }

    pub fn lift(&self, y: &DVector<f64>) -> DVector<f64> {
        &self.q * y
    }

    pub fn gram_pair(&self) -> Result<GramPair> {
        GramPair::from_maps(&self.t_r, &self.problem.jk, &self.v_r, &self.problem.je, &self.problem.tol)
    }

    /// `T_r# w0 + λ V_r# z0`, the right-hand side of the normal equation.
    pub fn normal_rhs(&self, lambda: f64) -> DVector<f64> {
        let p = &self.problem;
        self.t_r.transpose() * (p.jk.matrix() * &p.w0) + self.v_r.transpose() * (p.je.matrix() * &p.z0) * lambda
    }
}

/// Splits off the common nullspace `N(T) ∩ N(V)`; objective and constraint
/// are invariant along it.
pub fn deflate(problem: &Problem) -> DeflatedProblem {
    let stacked = linalg::vstack(&problem.t, &problem.v);
    let (q, null_basis) = linalg::row_and_null_spaces(&stacked, &problem.tol);
    DeflatedProblem {
        t_r: &problem.t * &q,
        v_r: &problem.v * &q,
        problem: problem.clone(),
        null_basis,
        q,
    }
}

/// Minimum-norm `x0` with `V x0 = z0`.
pub fn base_point(v: &DMatrix<f64>, z0: &DVector<f64>, tol: &ToleranceConfig) -> Result<DVector<f64>> {
    if z0.len() != v.nrows() {
        return Err(Error::DimensionMismatch(format!("z0 has length {} but V has {} rows", z0.len(), v.nrows())));
    }
    let rank = linalg::numerical_rank(v, tol);
    if rank != v.nrows() {
        return Err(Error::RankDeficientV { rank, rows: v.nrows() });
    }
    Ok(linalg::moore_penrose(v, tol) * z0)
}
