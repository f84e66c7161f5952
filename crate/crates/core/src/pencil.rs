//! The pencil `A + ρB` with `A = T#T` and `B = V#V`.
//!
//! [`psd_interval`] locates the set of `ρ` for which the pencil is positive
//! semidefinite. The smallest eigenvalue `φ(ρ) = λ_min(A + ρB)` is concave in
//! `ρ`, so the set is an interval (possibly empty or a single point) found by
//! a golden-section maximization of `φ` followed by bisection for its zeros.
//!
//! [`reduce_pencil`] fixes the midpoint `ρ` of a proper interval and writes
//!
//! ```text
//! A + λB = M^{1/2} (I + (λ - ρ) G) M^{1/2},   M = A + ρB,   G = M^{-1/2} B M^{-1/2},
//! ```
//!
//! so that `I + γG` is PSD exactly for `γ ∈ [-κ, κ]` with `κ` the half width.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg::{self, KreinSignature, SpectralDecomposition};
use crate::tolerance::ToleranceConfig;

/// `A = T#T`, `B = V#V` and their inertia flags.
#[derive(Debug, Clone, PartialEq)]
pub struct GramPair {
    pub a: DMatrix<f64>,
    pub b: DMatrix<f64>,
    pub a_indefinite: bool,
    pub b_indefinite: bool,
}

impl GramPair {
    pub fn new(a: DMatrix<f64>, b: DMatrix<f64>, tol: &ToleranceConfig) -> Result<Self> {
        if a.shape() != b.shape() || a.nrows() != a.ncols() {
            return Err(Error::DimensionMismatch(format!(
                "gram pair shapes {:?} and {:?}",
                a.shape(),
                b.shape()
            )));
        }
        for m in [&a, &b] {
            let asym = linalg::max_abs(&(m - m.transpose()));
            if asym > 1e-12 * (1.0 + linalg::max_abs(m)) {
                return Err(Error::NotSymmetric { asymmetry: asym });
            }
        }
        let a_indefinite = is_indefinite(&a, tol)?;
        let b_indefinite = is_indefinite(&b, tol)?;
        Ok(Self {
            a,
            b,
            a_indefinite,
            b_indefinite,
        })
    }

    pub fn from_maps(
        t: &DMatrix<f64>,
        jk: &KreinSignature,
        v: &DMatrix<f64>,
        je: &KreinSignature,
        tol: &ToleranceConfig,
    ) -> Result<Self> {
        Self::new(linalg::gram(t, jk)?, linalg::gram(v, je)?, tol)
    }

    pub fn dim(&self) -> usize {
        self.a.nrows()
    }

    /// `1 + ‖A‖_F + ‖B‖_F`.
    pub fn scale(&self) -> f64 {
        1.0 + self.a.norm() + self.b.norm()
    }

    pub fn combination(&self, rho: f64) -> DMatrix<f64> {
        linalg::symmetrize(&(&self.a + &self.b * rho))
    }

    /// `φ(ρ) = λ_min(A + ρB)`.
    pub fn lambda_min(&self, rho: f64) -> f64 {
        linalg::lambda_min(&self.combination(rho))
    }

    /// Eigenvalue roundoff level of `A + ρB`.
    fn noise(&self, rho: f64) -> f64 {
        64.0 * f64::EPSILON * (self.a.norm() + rho.abs() * self.b.norm()).max(f64::MIN_POSITIVE)
    }
}

fn is_indefinite(m: &DMatrix<f64>, tol: &ToleranceConfig) -> Result<bool> {
    if m.nrows() == 0 {
        return Ok(false);
    }
    let e = linalg::sym_eig(m)?;
    let band = tol.psd_tol * e.max().abs().max(e.min().abs());
    Ok(e.max() > band && e.min() < -band)
}

/// Set of `ρ` for which `A + ρB` is positive semidefinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PsdInterval {
    /// No such `ρ`; carries the maximizer of `λ_min(A + ρB)` and the maximum.
    Empty { rho_star: f64, max_lambda_min: f64 },
    Point(f64),
    Interval { lower: f64, upper: f64 },
}

impl PsdInterval {
    pub fn kind(&self) -> &'static str {
        match self {
            PsdInterval::Empty { .. } => "empty",
            PsdInterval::Point(_) => "point",
            PsdInterval::Interval { .. } => "interval",
        }
    }

    /// `(ρ−, ρ+)`, equal for a point, `None` when empty.
    pub fn bounds(&self) -> Option<(f64, f64)> {
        match *self {
            PsdInterval::Empty { .. } => None,
            PsdInterval::Point(r) => Some((r, r)),
            PsdInterval::Interval { lower, upper } => Some((lower, upper)),
        }
    }

    pub fn contains(&self, rho: f64, slack: f64) -> bool {
        self.bounds()
            .map(|(lo, hi)| rho >= lo - slack && rho <= hi + slack)
            .unwrap_or(false)
    }
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Computes the PSD interval of the pencil.
pub fn psd_interval(pair: &GramPair, tol: &ToleranceConfig) -> Result<PsdInterval> {
    if !pair.b_indefinite {
        return Err(Error::SemidefiniteB);
    }
    let scale = pair.scale();
    let empty_level = -tol.psd_tol * scale;
    let phi = |rho: f64| pair.lambda_min(rho);

    // Expanding bracket: the maximizer lies strictly inside once φ decreases
    // towards both ends; φ → −∞ linearly on both sides because B is indefinite.
    let mut hi = 1.0_f64;
    let mut steps = 0;
    while !(phi(hi) < empty_level && phi(hi) < phi(0.5 * hi)) {
        hi *= 2.0;
        steps += 1;
        if steps > 1100 || !hi.is_finite() {
            return Err(Error::NoConvergence(steps));
        }
    }
    let mut lo = -1.0_f64;
    steps = 0;
    while !(phi(lo) < empty_level && phi(lo) < phi(0.5 * lo)) {
        lo *= 2.0;
        steps += 1;
        if steps > 1100 || !lo.is_finite() {
            return Err(Error::NoConvergence(steps));
        }
    }
    let (outer_lo, outer_hi) = (lo, hi);

    // Golden-section maximization of the concave φ.
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (phi(c), phi(d));
    let (mut best_rho, mut best) = if fc >= fd { (c, fc) } else { (d, fd) };
    let mut iter = 0;
    while b - a > tol.root_tol * a.abs().max(b.abs()).max(1.0) && iter < tol.max_iter {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = phi(c);
            if fc > best {
                best = fc;
                best_rho = c;
            }
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = phi(d);
            if fd > best {
                best = fd;
                best_rho = d;
            }
        }
        iter += 1;
    }

    if best < empty_level {
        return Ok(PsdInterval::Empty {
            rho_star: best_rho,
            max_lambda_min: best,
        });
    }
    if best < -pair.noise(best_rho) {
        return Ok(PsdInterval::Point(best_rho));
    }

    let feasible = |rho: f64| phi(rho) >= -pair.noise(rho);
    let lower = bisect_boundary(&feasible, outer_lo, best_rho, tol);
    let upper = bisect_boundary(&feasible, outer_hi, best_rho, tol);
    let width_tol = 1e-8 * lower.abs().max(upper.abs()).max(1.0);
    if upper - lower <= width_tol {
        return Ok(PsdInterval::Point(0.5 * (lower + upper)));
    }
    // When λ_min touches zero tangentially the bisection returns a bracket of
    // width ~sqrt(noise). Interior points of a proper interval have no kernel
    // beyond N(A) ∩ N(B), so a larger kernel at the center means a point.
    if upper - lower <= 1e-4 * lower.abs().max(upper.abs()).max(1.0) {
        let center = 0.5 * (lower + upper);
        let kernel = pair.dim() - linalg::numerical_rank(&pair.combination(center), tol);
        let common = linalg::nullspace_basis(&linalg::vstack(&pair.a, &pair.b), tol).ncols();
        if kernel > common {
            return Ok(PsdInterval::Point(center));
        }
    }
    let (lower, upper) = polish_endpoints(pair, lower, upper, tol).unwrap_or((lower, upper));
    Ok(PsdInterval::Interval { lower, upper })
}

/// Bisects between an infeasible `outside` and feasible `inside` point; returns
/// the feasible end of the final bracket.
fn bisect_boundary(feasible: &impl Fn(f64) -> bool, outside: f64, inside: f64, tol: &ToleranceConfig) -> f64 {
    let (mut out, mut inn) = (outside, inside);
    for _ in 0..tol.max_iter {
        if (out - inn).abs() <= tol.root_tol * out.abs().max(inn.abs()).max(1.0) {
            break;
        }
        let mid = 0.5 * (out + inn);
        if feasible(mid) {
            inn = mid;
        } else {
            out = mid;
        }
    }
    inn
}

/// Refines bisection endpoints through the extreme eigenvalues of the reduced
/// operator `G` at the bracket midpoint: `ρ± = ρ_c ∓ 1/λ_{min,max}(G)`.
fn polish_endpoints(pair: &GramPair, lower: f64, upper: f64, tol: &ToleranceConfig) -> Option<(f64, f64)> {
    let center = 0.5 * (lower + upper);
    let m = pair.combination(center);
    let roots = linalg::psd_sqrt_pair(&m, tol).ok()?;
    let g = linalg::symmetrize(&(&roots.inv_half * &pair.b * &roots.inv_half));
    let e = linalg::sym_eig(&g).ok()?;
    if !(e.max() > 0.0 && e.min() < 0.0) {
        return None;
    }
    let new_lower = center - 1.0 / e.max();
    let new_upper = center - 1.0 / e.min();
    let agree = |x: f64, y: f64| (x - y).abs() <= 1e-6 * x.abs().max(1.0);
    (agree(new_lower, lower) && agree(new_upper, upper)).then_some((new_lower, new_upper))
}

/// Location of an eigenvector of `G` in the split
/// `H = N+ ⊕ D+ ⊕ N− ⊕ D− ⊕ N(G)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EigenClass {
    /// Eigenvalue `+1/κ`.
    NPlus,
    /// Positive eigenvalue below `1/κ`.
    DPlus,
    /// Eigenvalue `−1/κ`.
    NMinus,
    /// Negative eigenvalue above `−1/κ`.
    DMinus,
    Zero,
}

/// Dimensions of the spectral split.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SubspaceDims {
    pub n_plus: usize,
    pub n_minus: usize,
    pub n_g: usize,
    pub d_plus: usize,
    pub d_minus: usize,
}

/// Midpoint reduction of a pencil with a proper PSD interval.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedPencil {
    pub lower: f64,
    pub upper: f64,
    pub rho_mid: f64,
    pub kappa: f64,
    pub m: DMatrix<f64>,
    pub m_half: DMatrix<f64>,
    pub m_inv_half: DMatrix<f64>,
    pub g: DMatrix<f64>,
    pub g_eigen: SpectralDecomposition,
    /// Class of each eigenpair in `g_eigen` (same order).
    pub classes: Vec<EigenClass>,
    pub h_plus: DMatrix<f64>,
    pub h_minus: DMatrix<f64>,
    pub n_g: DMatrix<f64>,
    pub n_plus: DMatrix<f64>,
    pub n_minus: DMatrix<f64>,
    pub d_plus: DMatrix<f64>,
    pub d_minus: DMatrix<f64>,
}

impl ReducedPencil {
    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn dims(&self) -> SubspaceDims {
        SubspaceDims {
            n_plus: self.n_plus.ncols(),
            n_minus: self.n_minus.ncols(),
            n_g: self.n_g.ncols(),
            d_plus: self.d_plus.ncols(),
            d_minus: self.d_minus.ncols(),
        }
    }

    /// `G` with the boundary eigenvalues snapped to exactly `±1/κ`.
    pub fn effective_eigenvalue(&self, i: usize) -> f64 {
        match self.classes[i] {
            EigenClass::NPlus => 1.0 / self.kappa,
            EigenClass::NMinus => -1.0 / self.kappa,
            EigenClass::Zero => 0.0,
            _ => self.g_eigen.eigenvalues[i],
        }
    }

    /// `M^{1/2} (I + (λ − ρ) G) M^{1/2}`, which equals `A + λB`.
    pub fn congruence(&self, lambda: f64) -> DMatrix<f64> {
        let n = self.dim();
        let inner = DMatrix::identity(n, n) + &self.g * (lambda - self.rho_mid);
        &self.m_half * inner * &self.m_half
    }
}

/// Builds the midpoint reduction. Fails with `SingularM` when `A + ρB` is not
/// positive definite at the midpoint.
pub fn reduce_pencil(pair: &GramPair, interval: &PsdInterval, tol: &ToleranceConfig) -> Result<ReducedPencil> {
    let (lower, upper) = match *interval {
        PsdInterval::Interval { lower, upper } => (lower, upper),
        other => return Err(Error::WrongIntervalKind(format!("reduce_pencil needs a proper interval, got {}", other.kind()))),
    };
    let rho_mid = 0.5 * (lower + upper);
    let kappa = 0.5 * (upper - lower);
    let m = pair.combination(rho_mid);
    let roots = linalg::psd_sqrt_pair(&m, tol).map_err(|e| match e {
        Error::Singular { min_eigenvalue } | Error::NotPsd { min_eigenvalue } => Error::SingularM { min_eigenvalue },
        other => other,
    })?;
    let g = linalg::symmetrize(&(&roots.inv_half * &pair.b * &roots.inv_half));
    let g_eigen = linalg::sym_eig(&g)?;

    let inv_kappa = 1.0 / kappa;
    let zero_band = tol.rank_tol * inv_kappa;
    let edge_band = 1e-7 * inv_kappa;
    let classes: Vec<EigenClass> = g_eigen
        .eigenvalues
        .iter()
        .map(|&l| {
            if (l - inv_kappa).abs() <= edge_band {
                EigenClass::NPlus
            } else if (l + inv_kappa).abs() <= edge_band {
                EigenClass::NMinus
            } else if l > zero_band {
                EigenClass::DPlus
            } else if l < -zero_band {
                EigenClass::DMinus
            } else {
                EigenClass::Zero
            }
        })
        .collect();
    let pick = |wanted: &[EigenClass]| {
        let idx: Vec<usize> = (0..classes.len()).filter(|&i| wanted.contains(&classes[i])).collect();
        g_eigen.columns(&idx)
    };
    let reduced = ReducedPencil {
        lower,
        upper,
        rho_mid,
        kappa,
        h_plus: pick(&[EigenClass::NPlus, EigenClass::DPlus]),
        h_minus: pick(&[EigenClass::NMinus, EigenClass::DMinus]),
        n_g: pick(&[EigenClass::Zero]),
        n_plus: pick(&[EigenClass::NPlus]),
        n_minus: pick(&[EigenClass::NMinus]),
        d_plus: pick(&[EigenClass::DPlus]),
        d_minus: pick(&[EigenClass::DMinus]),
        m,
        m_half: roots.half,
        m_inv_half: roots.inv_half,
        g,
        g_eigen,
        classes,
    };
    if reduced.n_plus.ncols() == 0 {
        return Err(Error::BoundaryEigenspaceMissing { side: crate::Side::Plus });
    }
    if reduced.n_minus.ncols() == 0 {
        return Err(Error::BoundaryEigenspaceMissing { side: crate::Side::Minus });
    }
    Ok(reduced)
}

/// Sign class of the constraint form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignClass {
    /// `P+(V)`: strictly positive.
    Positive,
    /// `C_V`: neutral within the band.
    Neutral,
    /// `P−(V)`: strictly negative.
    Negative,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FormValues {
    pub objective: f64,
    pub constraint: f64,
    pub sign_class: SignClass,
}

/// Objective `[Tx − w0, Tx − w0]_K`, constraint `[Vx − z0, Vx − z0]_E`, and the
/// class of `y = x − V†z0` with respect to the constraint form (note
/// `[Vy, Vy]_E` equals the constraint value).
#[allow(clippy::too_many_arguments)]
pub fn evaluate_forms(
    t: &DMatrix<f64>,
    jk: &KreinSignature,
    v: &DMatrix<f64>,
    je: &KreinSignature,
    w0: &DVector<f64>,
    z0: &DVector<f64>,
    x: &DVector<f64>,
    tol: &ToleranceConfig,
) -> Result<FormValues> {
    let n = t.ncols();
    if v.ncols() != n || x.len() != n || w0.len() != t.nrows() || z0.len() != v.nrows() || jk.dim() != t.nrows() || je.dim() != v.nrows() {
        return Err(Error::DimensionMismatch("evaluate_forms operands are inconsistent".into()));
    }
    let rk = t * x - w0;
    let re = v * x - z0;
    let objective = jk.quad(&rk);
    let constraint = je.quad(&re);
    let y = x - linalg::moore_penrose(v, tol) * z0;
    let b = linalg::gram(v, je)?;
    let band = tol.psd_tol * b.norm() * y.norm_squared();
    let sign_class = if constraint > band {
        SignClass::Positive
    } else if constraint < -band {
        SignClass::Negative
    } else {
        SignClass::Neutral
    };
    Ok(FormValues {
        objective,
        constraint,
        sign_class,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn diag(v: &[f64]) -> DMatrix<f64> {
        DMatrix::from_diagonal(&DVector::from_column_slice(v))
    }

    fn pair(a: &[f64], b: &[f64]) -> GramPair {
        GramPair::new(diag(a), diag(b), &ToleranceConfig::default()).unwrap()
    }

    fn interval(a: &[f64], b: &[f64]) -> PsdInterval {
        psd_interval(&pair(a, b), &ToleranceConfig::default()).unwrap()
    }

    #[test]
    fn example_interval() {
        let PsdInterval::Interval { lower, upper } = interval(&[1.0, -0.5, 1.0], &[4.0, 1.0, -1.0]) else {
            panic!("expected an interval");
        };
        assert!((lower - 0.5).abs() <= 1e-10);
        assert!((upper - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn trivial_intervals() {
        let PsdInterval::Interval { lower, upper } = interval(&[1.0, 1.0], &[1.0, -1.0]) else {
            panic!()
        };
        assert_relative_eq!(lower, -1.0, epsilon = 1e-10);
        assert_relative_eq!(upper, 1.0, epsilon = 1e-10);
        assert!(matches!(interval(&[-1.0, 0.0], &[1.0, -1.0]), PsdInterval::Empty { .. }));
        let PsdInterval::Point(r) = interval(&[1.0, -1.0], &[1.0, -1.0]) else {
            panic!()
        };
        assert_relative_eq!(r, -1.0, epsilon = 1e-9);
    }

    #[test]
    fn far_away_interval() {
        // diag(1000 + ρ, -990 - ρ... ) style: PSD for ρ ∈ [995, 1005]
        let PsdInterval::Interval { lower, upper } = interval(&[-995.0, 1005.0], &[1.0, -1.0]) else {
            panic!()
        };
        assert_relative_eq!(lower, 995.0, epsilon = 1e-9);
        assert_relative_eq!(upper, 1005.0, epsilon = 1e-9);
    }

    #[test]
    fn flat_top_from_common_nullspace() {
        let PsdInterval::Interval { lower, upper } = interval(&[1.0, 1.0, 0.0], &[1.0, -1.0, 0.0]) else {
            panic!()
        };
        assert_relative_eq!(lower, -1.0, epsilon = 1e-10);
        assert_relative_eq!(upper, 1.0, epsilon = 1e-10);
    }

    #[test]
    fn tangent_point() {
        // λ_min ≈ −ρ² near 0: PSD only at ρ = 0
        let a = DMatrix::from_diagonal(&DVector::from_vec(vec![0.0, 1.0, 1.0]));
        let b = DMatrix::from_row_slice(3, 3, &[0.0, 1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0]);
        let p = GramPair::new(a, b, &ToleranceConfig::default()).unwrap();
        let PsdInterval::Point(r) = psd_interval(&p, &ToleranceConfig::default()).unwrap() else {
            panic!()
        };
        assert!(r.abs() <= 1e-6);
    }

    #[test]
    fn semidefinite_b_rejected() {
        let p = pair(&[1.0, 1.0], &[1.0, 0.0]);
        assert_eq!(psd_interval(&p, &ToleranceConfig::default()), Err(Error::SemidefiniteB));
    }

    #[test]
    fn reduce_example() {
        let p = pair(&[1.0, -0.5, 1.0], &[4.0, 1.0, -1.0]);
        let tol = ToleranceConfig::default();
        let r = reduce_pencil(&p, &psd_interval(&p, &tol).unwrap(), &tol).unwrap();
        assert_relative_eq!(r.rho_mid, 0.75, epsilon = 1e-10);
        assert_relative_eq!(r.kappa, 0.25, epsilon = 1e-10);
        assert_relative_eq!(r.m, diag(&[4.0, 0.25, 0.25]), epsilon = 1e-9);
        assert_relative_eq!(r.g, diag(&[1.0, 4.0, -4.0]), epsilon = 1e-8);
        assert_eq!(
            r.dims(),
            SubspaceDims {
                n_plus: 1,
                n_minus: 1,
                n_g: 0,
                d_plus: 1,
                d_minus: 0
            }
        );
        assert_relative_eq!(r.n_plus[(1, 0)].abs(), 1.0, epsilon = 1e-12);
        assert_relative_eq!(r.d_plus[(0, 0)].abs(), 1.0, epsilon = 1e-12);
        assert_relative_eq!(r.n_minus[(2, 0)].abs(), 1.0, epsilon = 1e-12);
        assert_eq!(r.h_plus.ncols(), 2);
        assert_eq!(r.h_minus.ncols(), 1);
    }

    #[test]
    fn reduce_hilbert_like() {
        let p = pair(&[1.0, 1.0], &[1.0, -1.0]);
        let tol = ToleranceConfig::default();
        let r = reduce_pencil(&p, &psd_interval(&p, &tol).unwrap(), &tol).unwrap();
        assert_relative_eq!(r.rho_mid, 0.0, epsilon = 1e-10);
        assert_relative_eq!(r.kappa, 1.0, epsilon = 1e-10);
        assert_relative_eq!(r.g, diag(&[1.0, -1.0]), epsilon = 1e-9);
        let d = r.dims();
        assert_eq!((d.n_plus, d.n_minus, d.d_plus, d.d_minus, d.n_g), (1, 1, 0, 0, 0));
    }

    #[test]
    fn shared_nullspace_gives_singular_m() {
        let p = pair(&[1.0, 1.0, 0.0], &[1.0, -1.0, 0.0]);
        let tol = ToleranceConfig::default();
        let iv = psd_interval(&p, &tol).unwrap();
        assert!(matches!(reduce_pencil(&p, &iv, &tol), Err(Error::SingularM { .. })));
        assert!(matches!(reduce_pencil(&p, &PsdInterval::Point(0.0), &tol), Err(Error::WrongIntervalKind(_))));
    }

    #[test]
    fn forms_on_example() {
        let s = 0.5_f64.sqrt();
        let t = diag(&[1.0, s, 1.0]);
        let jk = KreinSignature::from_signs(&[1.0, -1.0, 1.0]).unwrap();
        let v = diag(&[2.0, 1.0, 1.0]);
        let je = KreinSignature::from_signs(&[1.0, 1.0, -1.0]).unwrap();
        let tol = ToleranceConfig::default();
        let zero = DVector::zeros(3);
        let e3 = DVector::from_vec(vec![0.0, 0.0, 1.0]);
        let f = evaluate_forms(&t, &jk, &v, &je, &zero, &zero, &e3, &tol).unwrap();
        assert_eq!(f.constraint, -1.0);
        assert_eq!(f.sign_class, SignClass::Negative);
        assert_eq!(f.objective, 1.0);

        let x = DVector::from_vec(vec![0.3, -1.2, 0.7]);
        let w0 = &t * &x;
        let z0 = &v * &x;
        let f = evaluate_forms(&t, &jk, &v, &je, &w0, &z0, &x, &tol).unwrap();
        assert_eq!((f.objective, f.constraint, f.sign_class), (0.0, 0.0, SignClass::Neutral));
        assert!(evaluate_forms(&t, &jk, &v, &je, &w0, &z0, &DVector::zeros(2), &tol).is_err());
    }
}
