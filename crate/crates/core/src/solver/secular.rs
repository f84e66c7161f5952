//! Reduced right-hand side and the secular equation `g+(τ) = g−(τ)`.
//!
//! Every quantity here is evaluated in the eigenbasis of `G`. Boundary
//! eigenvalues (classes `NPlus`/`NMinus`) are treated as exactly `±1/κ`, so
//! `(I + τG)` acts on `N±` as the scalar `(κ ± τ)/κ`.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result, Side};
use crate::linalg;
use crate::pencil::{EigenClass, ReducedPencil};
use crate::solver::problem::DeflatedProblem;
use crate::tolerance::ToleranceConfig;

/// `u0 = M^{-1/2} T#(w0 − T x0)` and its components in
/// `N+ ⊕ D+ ⊕ N− ⊕ D− ⊕ N(G)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedRhs {
    /// Base point `V† z0` in original coordinates.
    pub x0: DVector<f64>,
    /// Base point in deflated coordinates.
    pub x0_reduced: DVector<f64>,
    pub u0: DVector<f64>,
    /// `u0` in the eigenbasis of `G`.
    pub coeffs: DVector<f64>,
    pub v_plus: DVector<f64>,
    pub w_plus: DVector<f64>,
    pub v_minus: DVector<f64>,
    pub w_minus: DVector<f64>,
    pub u0_zero: DVector<f64>,
}

impl ReducedRhs {
    /// Builds the components of an arbitrary reduced vector `u0`.
    pub fn from_u0(pencil: &ReducedPencil, u0: DVector<f64>, x0: DVector<f64>, x0_reduced: DVector<f64>) -> Self {
        let q = &pencil.g_eigen.eigenvectors;
        let coeffs = q.transpose() * &u0;
        let part = |class: EigenClass| {
            let mut c = DVector::zeros(coeffs.len());
            for (i, cl) in pencil.classes.iter().enumerate() {
                if *cl == class {
                    c[i] = coeffs[i];
                }
            }
            q * c
        };
        Self {
            v_plus: part(EigenClass::NPlus),
            w_plus: part(EigenClass::DPlus),
            v_minus: part(EigenClass::NMinus),
            w_minus: part(EigenClass::DMinus),
            u0_zero: part(EigenClass::Zero),
            x0,
            x0_reduced,
            u0,
            coeffs,
        }
    }
}

/// Computes the reduced right-hand side for a deflated problem.
pub fn reduced_rhs(deflated: &DeflatedProblem, pencil: &ReducedPencil) -> Result<ReducedRhs> {
    let p = &deflated.problem;
    if pencil.dim() != deflated.reduced_dim() {
        return Err(Error::DimensionMismatch(format!(
            "pencil has dimension {} but the deflated problem has {}",
            pencil.dim(),
            deflated.reduced_dim()
        )));
    }
    let x0_reduced = linalg::moore_penrose(&deflated.v_r, &p.tol) * &p.z0;
    let residual = &p.w0 - &deflated.t_r * &x0_reduced;
    let t_adj = linalg::indefinite_adjoint(&deflated.t_r, &p.jk)?;
    let u0 = &pencil.m_inv_half * (t_adj * residual);
    let x0 = deflated.lift(&x0_reduced);
    Ok(ReducedRhs::from_u0(pencil, u0, x0, x0_reduced))
}

/// Values of `(g+(τ), g−(τ))` for `τ ∈ [−κ, κ]`.
///
/// At `τ = ±κ` the blocked boundary eigenspace is dropped, which is the
/// pseudoinverse limit of `(I + τG)^{-1}`.
pub fn secular_eval(pencil: &ReducedPencil, rhs: &ReducedRhs, tau: f64) -> Result<(f64, f64)> {
    secular_eval_coeffs(pencil, &rhs.coeffs, tau)
}

fn secular_eval_coeffs(pencil: &ReducedPencil, coeffs: &DVector<f64>, tau: f64) -> Result<(f64, f64)> {
    let kappa = pencil.kappa;
    if !(tau.abs() <= kappa) {
        return Err(Error::SecularDomain { tau, kappa });
    }
    let (mut gp, mut gm) = (0.0, 0.0);
    for (i, class) in pencil.classes.iter().enumerate() {
        let c2 = coeffs[i] * coeffs[i];
        if c2 == 0.0 {
            continue;
        }
        match class {
            EigenClass::NPlus if tau > -kappa => gp += kappa * c2 / ((kappa + tau) * (kappa + tau)),
            EigenClass::NMinus if tau < kappa => gm += kappa * c2 / ((kappa - tau) * (kappa - tau)),
            EigenClass::DPlus => {
                let g = pencil.g_eigen.eigenvalues[i];
                let d = 1.0 + tau * g;
                gp += g * c2 / (d * d);
            }
            EigenClass::DMinus => {
                let g = pencil.g_eigen.eigenvalues[i];
                let d = 1.0 + tau * g;
                gm += -g * c2 / (d * d);
            }
            _ => {}
        }
    }
    Ok((gp, gm))
}

/// Solution set `Θ` of `(I + γG) y = u0`, `⟨Gy, y⟩ = 0` in reduced coordinates.
#[derive(Debug, Clone, PartialEq)]
pub enum ThetaSet {
    Singleton {
        y: DVector<f64>,
        gamma: f64,
    },
    /// `center + alpha · (sphere_basis · s)` for unit `s`.
    Sphere {
        center: DVector<f64>,
        gamma: f64,
        alpha: f64,
        sphere_basis: DMatrix<f64>,
        /// Boundary eigenspace carrying the sphere: `Minus` when `γ = κ`.
        side: Side,
    },
}

impl ThetaSet {
    pub fn gamma(&self) -> f64 {
        match self {
            ThetaSet::Singleton { gamma, .. } | ThetaSet::Sphere { gamma, .. } => *gamma,
        }
    }

    pub fn center(&self) -> &DVector<f64> {
        match self {
            ThetaSet::Singleton { y, .. } => y,
            ThetaSet::Sphere { center, .. } => center,
        }
    }

    pub fn is_singleton(&self) -> bool {
        matches!(self, ThetaSet::Singleton { .. })
    }

    /// A member of the set: the singleton, or `center + alpha·basis·s` with
    /// `s` normalized (the first basis direction when `s` is zero).
    pub fn member(&self, s: Option<&DVector<f64>>) -> DVector<f64> {
        match self {
            ThetaSet::Singleton { y, .. } => y.clone(),
            ThetaSet::Sphere {
                center,
                alpha,
                sphere_basis,
                ..
            } => {
                let k = sphere_basis.ncols();
                let mut dir = s.cloned().unwrap_or_else(|| DVector::zeros(k));
                let norm = dir.norm();
                if norm == 0.0 {
                    dir = DVector::zeros(k);
                    dir[0] = 1.0;
                } else {
                    dir /= norm;
                }
                center + sphere_basis * dir * *alpha
            }
        }
    }

    /// `(‖(I + γG)y − u0‖, |⟨Gy, y⟩|)` for a member `y`.
    pub fn residuals(pencil: &ReducedPencil, u0: &DVector<f64>, gamma: f64, y: &DVector<f64>) -> (f64, f64) {
        let gy = &pencil.g * y;
        let eq = (y + &gy * gamma - u0).norm();
        (eq, gy.dot(y).abs())
    }
}

/// Outcome of the secular solve when no member exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NoTheta {
    pub side: Side,
}

fn h_value(pencil: &ReducedPencil, coeffs: &DVector<f64>, tau: f64) -> f64 {
    let (gp, gm) = secular_eval_coeffs(pencil, coeffs, tau).expect("tau inside the closed interval");
    gp - gm
}

/// Bisects `h = g+ − g−` on `(lo, hi) ⊂ (−κ, κ)`; requires `h(lo) > 0 > h(hi)`
/// (endpoints equal to `∓κ` are taken as limits and not evaluated).
pub fn bisect_secular(pencil: &ReducedPencil, rhs: &ReducedRhs, lo: f64, hi: f64, tol: &ToleranceConfig) -> Option<f64> {
    bisect_coeffs(pencil, &rhs.coeffs, lo, hi, tol)
}

fn bisect_coeffs(pencil: &ReducedPencil, coeffs: &DVector<f64>, lo: f64, hi: f64, tol: &ToleranceConfig) -> Option<f64> {
    let kappa = pencil.kappa;
    if !(lo < hi && lo >= -kappa && hi <= kappa) {
        return None;
    }
    if lo > -kappa && !(h_value(pencil, coeffs, lo) > 0.0) {
        return None;
    }
    if hi < kappa && !(h_value(pencil, coeffs, hi) < 0.0) {
        return None;
    }
    // Bisect past the root_tol width down to floating-point resolution: near
    // an endpoint x(γ) is steep and the extra digits go straight into the
    // constraint residual.
    let (mut a, mut b) = (lo, hi);
    let mut iter = 0;
    while iter < tol.max_iter {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let h = h_value(pencil, coeffs, mid);
        if h > 0.0 {
            a = mid;
        } else if h < 0.0 {
            b = mid;
        } else {
            return Some(mid);
        }
        iter += 1;
    }
    Some(0.5 * (a + b))
}

/// `(I + γG)† u0` in original reduced coordinates, with the blocked boundary
/// eigenspace (if `γ = ±κ`) mapped to zero.
fn apply_resolvent(pencil: &ReducedPencil, coeffs: &DVector<f64>, gamma: f64, blocked: Option<EigenClass>) -> DVector<f64> {
    let mut z = DVector::zeros(coeffs.len());
    for i in 0..coeffs.len() {
        if Some(pencil.classes[i]) == blocked {
            continue;
        }
        z[i] = coeffs[i] / (1.0 + gamma * pencil.effective_eigenvalue(i));
    }
    &pencil.g_eigen.eigenvectors * z
}

/// Solves for `Θ`. See the case analysis on [`ThetaSet`].
///
/// * `u0 ∈ N(G)`: `Θ = {u0}`, reported with `γ = 0`.
/// * `h(κ) ≥ 0` (possible only when `v− = 0`): sphere in `N−` at `γ = κ`.
/// * `h(−κ) ≤ 0` (possible only when `v+ = 0`): sphere in `N+` at `γ = −κ`.
/// * otherwise the unique interior root of the decreasing `h`.
///
/// Components of `v±` below `rank_tol·‖u0‖` are treated as zero.
pub fn secular_solve(
    pencil: &ReducedPencil,
    rhs: &ReducedRhs,
    tol: &ToleranceConfig,
) -> std::result::Result<ThetaSet, NoTheta> {
    let u0_norm = rhs.u0.norm();
    let outside = (&rhs.u0 - &rhs.u0_zero).norm();
    if u0_norm == 0.0 || outside <= tol.rank_tol * u0_norm {
        return Ok(ThetaSet::Singleton {
            y: rhs.u0.clone(),
            gamma: 0.0,
        });
    }

    let mut coeffs = rhs.coeffs.clone();
    let negligible = tol.rank_tol * u0_norm;
    let v_plus_zero = rhs.v_plus.norm() <= negligible;
    let v_minus_zero = rhs.v_minus.norm() <= negligible;
    for (i, class) in pencil.classes.iter().enumerate() {
        if (v_plus_zero && *class == EigenClass::NPlus) || (v_minus_zero && *class == EigenClass::NMinus) {
            coeffs[i] = 0.0;
        }
    }
    let kappa = pencil.kappa;

    if v_minus_zero {
        let (gp, gm) = secular_eval_coeffs(pencil, &coeffs, kappa).expect("boundary evaluation");
        if gp - gm >= -64.0 * f64::EPSILON * (gp + gm) {
            if pencil.n_minus.ncols() == 0 && gp - gm > 0.0 {
                return Err(NoTheta { side: Side::Minus });
            }
            return Ok(ThetaSet::Sphere {
                center: apply_resolvent(pencil, &coeffs, kappa, Some(EigenClass::NMinus)),
                gamma: kappa,
                alpha: (kappa * (gp - gm)).max(0.0).sqrt(),
                sphere_basis: pencil.n_minus.clone(),
                side: Side::Minus,
            });
        }
    }
    if v_plus_zero {
        let (gp, gm) = secular_eval_coeffs(pencil, &coeffs, -kappa).expect("boundary evaluation");
        if gm - gp >= -64.0 * f64::EPSILON * (gp + gm) {
            if pencil.n_plus.ncols() == 0 && gm - gp > 0.0 {
                return Err(NoTheta { side: Side::Plus });
            }
            return Ok(ThetaSet::Sphere {
                center: apply_resolvent(pencil, &coeffs, -kappa, Some(EigenClass::NPlus)),
                gamma: -kappa,
                alpha: (kappa * (gm - gp)).max(0.0).sqrt(),
                sphere_basis: pencil.n_plus.clone(),
                side: Side::Plus,
            });
        }
    }

    let gamma = bisect_coeffs(pencil, &coeffs, -kappa, kappa, tol).expect("h changes sign on (-κ, κ)");
    Ok(ThetaSet::Singleton {
        y: apply_resolvent(pencil, &coeffs, gamma, None),
        gamma,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pencil::{psd_interval, reduce_pencil, GramPair};
    use approx::assert_relative_eq;

    fn diag(v: &[f64]) -> DMatrix<f64> {
        DMatrix::from_diagonal(&DVector::from_column_slice(v))
    }

    /// Pencil with `M = I` and `G = diag(g)` (A = I, B = G, midpoint 0).
    fn pencil_for(g: &[f64]) -> ReducedPencil {
        let tol = ToleranceConfig::default();
        let pair = GramPair::new(DMatrix::identity(g.len(), g.len()), diag(g), &tol).unwrap();
        let iv = psd_interval(&pair, &tol).unwrap();
        reduce_pencil(&pair, &iv, &tol).unwrap()
    }

    fn rhs_for(pencil: &ReducedPencil, u0: &[f64]) -> ReducedRhs {
        let n = u0.len();
        ReducedRhs::from_u0(pencil, DVector::from_column_slice(u0), DVector::zeros(n), DVector::zeros(n))
    }

    fn example_pencil() -> ReducedPencil {
        let tol = ToleranceConfig::default();
        let pair = GramPair::new(diag(&[1.0, -0.5, 1.0]), diag(&[4.0, 1.0, -1.0]), &tol).unwrap();
        let iv = psd_interval(&pair, &tol).unwrap();
        reduce_pencil(&pair, &iv, &tol).unwrap()
    }

    #[test]
    fn example_components_and_values() {
        let p = example_pencil();
        // u0 = M^{-1/2}(1, 1, 1) with M = diag(4, 1/4, 1/4)
        let rhs = rhs_for(&p, &[0.5, 2.0, 2.0]);
        assert_relative_eq!(rhs.v_plus, DVector::from_vec(vec![0.0, 2.0, 0.0]), epsilon = 1e-10);
        assert_relative_eq!(rhs.w_plus, DVector::from_vec(vec![0.5, 0.0, 0.0]), epsilon = 1e-10);
        assert_relative_eq!(rhs.v_minus, DVector::from_vec(vec![0.0, 0.0, 2.0]), epsilon = 1e-10);
        assert!(rhs.w_minus.norm() < 1e-12 && rhs.u0_zero.norm() < 1e-12);
        let (gp, gm) = secular_eval(&p, &rhs, 0.0).unwrap();
        assert_relative_eq!(gp, 16.25, epsilon = 1e-8);
        assert_relative_eq!(gm, 16.0, epsilon = 1e-8);
        let sum = &rhs.v_plus + &rhs.w_plus + &rhs.v_minus + &rhs.w_minus + &rhs.u0_zero;
        assert!((sum - &rhs.u0).norm() <= 1e-10 * rhs.u0.norm());
    }

    #[test]
    fn secular_two_by_two() {
        let p = pencil_for(&[1.0, -1.0]);
        let rhs = rhs_for(&p, &[3.0, 1.0]);
        for tau in [-0.9, -0.3, 0.0, 0.4, 0.95] {
            let (gp, gm) = secular_eval(&p, &rhs, tau).unwrap();
            assert_relative_eq!(gp, 9.0 / ((1.0 + tau) * (1.0 + tau)), max_relative = 1e-9);
            assert_relative_eq!(gm, 1.0 / ((1.0 - tau) * (1.0 - tau)), max_relative = 1e-9);
        }
        assert!(matches!(secular_eval(&p, &rhs, 1.5), Err(Error::SecularDomain { .. })));
        let zero = rhs_for(&p, &[0.0, 0.0]);
        assert_eq!(secular_eval(&p, &zero, 0.3).unwrap(), (0.0, 0.0));
    }

    #[test]
    fn interior_root_two_by_two() {
        let p = pencil_for(&[1.0, -1.0]);
        let rhs = rhs_for(&p, &[3.0, 1.0]);
        let theta = secular_solve(&p, &rhs, &ToleranceConfig::default()).unwrap();
        let ThetaSet::Singleton { y, gamma } = &theta else { panic!() };
        assert_relative_eq!(*gamma, 0.5, epsilon = 1e-10);
        assert_relative_eq!(y.map(f64::abs), DVector::from_vec(vec![2.0, 2.0]), epsilon = 1e-9);
        let (eq, q) = ThetaSet::residuals(&p, &rhs.u0, *gamma, y);
        assert!(eq < 1e-9 && q < 1e-8);
    }

    #[test]
    fn boundary_sphere_in_n_plus() {
        let p = pencil_for(&[1.0, -1.0, -0.5]);
        let rhs = rhs_for(&p, &[0.0, 0.0, 1.0]);
        let theta = secular_solve(&p, &rhs, &ToleranceConfig::default()).unwrap();
        let ThetaSet::Sphere {
            center,
            gamma,
            alpha,
            sphere_basis,
            side,
        } = &theta
        else {
            panic!("expected a sphere, got {theta:?}")
        };
        assert_relative_eq!(*gamma, -1.0, epsilon = 1e-10);
        assert_eq!(*side, Side::Plus);
        assert_relative_eq!(*alpha, 2.0_f64.sqrt() / 3.0, epsilon = 1e-10);
        assert_relative_eq!(center.clone(), DVector::from_vec(vec![0.0, 0.0, 2.0 / 3.0]), epsilon = 1e-10);
        assert_eq!(sphere_basis.ncols(), 1);
        assert_relative_eq!(sphere_basis[(0, 0)].abs(), 1.0, epsilon = 1e-12);
        for s in [1.0, -1.0] {
            let y = theta.member(Some(&DVector::from_vec(vec![s])));
            assert_relative_eq!(y[0].abs(), 2.0_f64.sqrt() / 3.0, epsilon = 1e-10);
            let (eq, q) = ThetaSet::residuals(&p, &rhs.u0, *gamma, &y);
            assert!(eq < 1e-10 && q < 1e-10, "{eq} {q}");
        }
    }

    #[test]
    fn u0_in_kernel_of_g() {
        let tol = ToleranceConfig::default();
        let pair = GramPair::new(DMatrix::identity(3, 3), diag(&[1.0, -1.0, 0.0]), &tol).unwrap();
        let p = reduce_pencil(&pair, &psd_interval(&pair, &tol).unwrap(), &tol).unwrap();
        let rhs = rhs_for(&p, &[0.0, 0.0, 1.0]);
        assert!(rhs.v_plus.norm() + rhs.v_minus.norm() + rhs.w_plus.norm() + rhs.w_minus.norm() < 1e-12);
        let theta = secular_solve(&p, &rhs, &tol).unwrap();
        assert_eq!(
            theta,
            ThetaSet::Singleton {
                y: DVector::from_vec(vec![0.0, 0.0, 1.0]),
                gamma: 0.0
            }
        );
    }

    #[test]
    fn example_boundary_cases() {
        let p = example_pencil();
        // components (1, 1, 0): u0 = (0.5, 2, 0) lies in H+, so γ = κ
        let rhs = rhs_for(&p, &[0.5, 2.0, 0.0]);
        let theta = secular_solve(&p, &rhs, &ToleranceConfig::default()).unwrap();
        assert_relative_eq!(theta.gamma(), 0.25, epsilon = 1e-10);
        let ThetaSet::Sphere { alpha, .. } = theta else { panic!() };
        assert_relative_eq!(alpha, 1.04_f64.sqrt(), epsilon = 1e-9);

        // components (1, 0, 1): v+ = 0 and h(−κ) < 0, so γ = −κ
        let rhs = rhs_for(&p, &[0.5, 0.0, 2.0]);
        let theta = secular_solve(&p, &rhs, &ToleranceConfig::default()).unwrap();
        assert_relative_eq!(theta.gamma(), -0.25, epsilon = 1e-10);
        let ThetaSet::Sphere { alpha, .. } = theta else { panic!() };
        assert_relative_eq!(alpha, 8.0_f64.sqrt() / 3.0, epsilon = 1e-9);
    }

    #[test]
    fn bracket_perturbation_gives_same_root() {
        let p = pencil_for(&[1.0, -1.0]);
        let rhs = rhs_for(&p, &[3.0, 1.0]);
        let tol = ToleranceConfig::default();
        let a = bisect_secular(&p, &rhs, -p.kappa, p.kappa, &tol).unwrap();
        let b = bisect_secular(&p, &rhs, -0.7, 0.9, &tol).unwrap();
        assert!((a - b).abs() <= 10.0 * tol.root_tol);
        assert!(bisect_secular(&p, &rhs, 0.6, 0.9, &tol).is_none());
    }
}
