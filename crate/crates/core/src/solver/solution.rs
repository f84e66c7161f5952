use nalgebra::{DMatrix, DVector};

use crate::linalg;
use crate::pencil::{psd_interval, PsdInterval, ReducedPencil};
use crate::solver::problem::{base_point, DeflatedProblem, Problem};
use crate::solver::secular::{ReducedRhs, ThetaSet};

/// Family `particular + map·c`, `‖c‖ = alpha`, in original coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Ellipsoid {
    pub map: DMatrix<f64>,
    pub alpha: f64,
}

impl Ellipsoid {
    /// Largest semi-axis `alpha · σ_max(map)`; the exact radius whenever the
    /// family is a sphere (always the case for a one-dimensional basis).
    pub fn radius(&self) -> f64 {
        if self.map.ncols() == 0 {
            return 0.0;
        }
        self.alpha * linalg::singular_values(&self.map)[0]
    }

    /// Offset `alpha · map · s/‖s‖`.
    pub fn offset(&self, s: &DVector<f64>) -> DVector<f64> {
        let norm = s.norm();
        if norm == 0.0 {
            return DVector::zeros(self.map.nrows());
        }
        &self.map * s * (self.alpha / norm)
    }
}

/// Solution set of the original problem.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionSet {
    /// The solution for singleton sets, otherwise the center of the family.
    pub particular: DVector<f64>,
    pub lambda: f64,
    pub ellipsoid: Option<Ellipsoid>,
    /// Basis of `N(T) ∩ N(V)`; adding any combination keeps optimality.
    pub null_part: DMatrix<f64>,
    pub min_value: f64,
}

impl SolutionSet {
    pub fn is_singleton(&self) -> bool {
        self.ellipsoid.is_none()
    }

    /// Member selected by the direction `s` (ignored for singletons).
    pub fn member(&self, s: &DVector<f64>) -> DVector<f64> {
        match &self.ellipsoid {
            None => self.particular.clone(),
            Some(e) => &self.particular + e.offset(s),
        }
    }

    /// A fixed feasible member: the particular solution, or the family
    /// member along the first sphere direction.
    pub fn representative(&self) -> DVector<f64> {
        match &self.ellipsoid {
            None => self.particular.clone(),
            Some(e) => {
                let mut s = DVector::zeros(e.map.ncols());
                if !s.is_empty() {
                    s[0] = 1.0;
                }
                &self.particular + e.offset(&s)
            }
        }
    }

    /// `count` members spread over the family (all equal for singletons).
    pub fn sample_members(&self, count: usize) -> Vec<DVector<f64>> {
        let Some(e) = &self.ellipsoid else {
            return vec![self.particular.clone(); count];
        };
        let k = e.map.ncols();
        (0..count)
            .map(|i| {
                let s = if k == 1 {
                    DVector::from_element(1, if i % 2 == 0 { 1.0 } else { -1.0 })
                } else {
                    // deterministic spread over the unit sphere of dimension k
                    DVector::from_fn(k, |j, _| {
                        let phase = (i as f64 + 1.0) * (j as f64 + 1.0) * 0.7548776662466927;
                        (2.0 * std::f64::consts::PI * phase).cos() + if j == 0 { 1e-3 } else { 0.0 }
                    })
                };
                self.member(&s)
            })
            .collect()
    }

    pub fn radius(&self) -> f64 {
        self.ellipsoid.as_ref().map_or(0.0, Ellipsoid::radius)
    }
}

/// Maps a reduced solution set back to the original coordinates.
pub fn assemble_solution(deflated: &DeflatedProblem, pencil: &ReducedPencil, rhs: &ReducedRhs, theta: &ThetaSet) -> SolutionSet {
    let y_center = &pencil.m_inv_half * theta.center();
    let particular = deflated.lift(&(&rhs.x0_reduced + y_center));
    let ellipsoid = match theta {
        ThetaSet::Singleton { .. } => None,
        ThetaSet::Sphere { alpha, sphere_basis, .. } => Some(Ellipsoid {
            map: &deflated.q * (&pencil.m_inv_half * sphere_basis),
            alpha: *alpha,
        }),
    };
    let mut set = SolutionSet {
        particular,
        lambda: theta.gamma() + pencil.rho_mid,
        ellipsoid,
        null_part: deflated.null_basis.clone(),
        min_value: 0.0,
    };
    set.min_value = deflated.problem.objective(&set.representative());
    set
}

/// Residuals of the optimality conditions at a candidate `(x̃, λ)`.
///
/// All residuals are divided by the problem scale.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    /// `‖(A + λB)x̃ − (T#w0 + λV#z0)‖ / scale`.
    pub normal_residual: f64,
    /// `|[Vx̃ − z0, Vx̃ − z0]| / scale`.
    pub constraint_residual: f64,
    /// `|[T(x0 + y0) − w0, T y0]| / scale` with `y0 = x̃ − x0`.
    pub orthogonality_residual: f64,
    /// `λ_min(A + λB) / scale`.
    pub min_eigenvalue: f64,
    pub interval: Option<(f64, f64)>,
    pub lambda_in_interval: bool,
    pub psd: bool,
    pub pass: bool,
}

/// Checks the necessary and sufficient global-optimality conditions: PSD
/// multiplier in the interval, normal equation, and feasibility.
pub fn verify_solution(problem: &Problem, x: &DVector<f64>, lambda: f64) -> VerificationReport {
    let tol = &problem.tol;
    let scale = problem.scale();
    let a = problem.a();
    let b = problem.b();
    let pencil = linalg::symmetrize(&(&a + &b * lambda));
    let rhs = problem.t_adj_w0() + problem.v_adj_z0() * lambda;
    let normal_residual = (&pencil * x - rhs).norm() / scale;
    let constraint_residual = problem.constraint(x).abs() / scale;

    let orthogonality_residual = match base_point(&problem.v, &problem.z0, tol) {
        Ok(x0) => {
            let y0 = x - &x0;
            let r = &problem.t * x - &problem.w0;
            problem.jk.inner(&r, &(&problem.t * y0)).abs() / scale
        }
        Err(_) => f64::INFINITY,
    };
    let min_eigenvalue = linalg::lambda_min(&pencil) / scale;
    let psd = min_eigenvalue >= -tol.psd_tol;

    let interval = problem
        .gram_pair()
        .ok()
        .and_then(|pair| psd_interval(&pair, tol).ok())
        .and_then(|iv: PsdInterval| iv.bounds());
    let lambda_in_interval = interval
        .map(|(lo, hi)| {
            let slack = tol.root_tol * lo.abs().max(hi.abs()).max(1.0);
            lambda >= lo - slack && lambda <= hi + slack
        })
        .unwrap_or(false);

    let pass = normal_residual <= tol.residual_tol
        && constraint_residual <= tol.residual_tol
        && orthogonality_residual <= tol.residual_tol
        && psd
        && lambda_in_interval;
    VerificationReport {
        normal_residual,
        constraint_residual,
        orthogonality_residual,
        min_eigenvalue,
        interval,
        lambda_in_interval,
        psd,
        pass,
    }
}
