//! Random problems with a planted PSD interval.
//!
//! A positive definite `M` and a spectrum for `G` inside `[−1/κ, 1/κ]` with
//! both ends attained fix `B = M^{1/2} G M^{1/2}` and `A = M − ρ_mid B`; the
//! interval of `A + ρB` is then exactly `[ρ_mid − κ, ρ_mid + κ]`. `T` and `V`
//! are recovered from the eigendecompositions of `A` and `B`.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::linalg::{self, KreinSignature};
use crate::solver::problem::Problem;
use crate::tolerance::ToleranceConfig;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorConfig {
    pub n: usize,
    /// Planted interval; drawn at random when `None`.
    pub interval: Option<(f64, f64)>,
    /// Number of zero eigenvalues of `G`.
    pub kernel_dim: usize,
    /// Dimension of the planted `N(T) ∩ N(V)`.
    pub common_null_dim: usize,
}

impl GeneratorConfig {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            interval: None,
            kernel_dim: 0,
            common_null_dim: 0,
        }
    }
}

fn gaussian_matrix(rng: &mut ChaCha8Rng, r: usize, c: usize) -> DMatrix<f64> {
    DMatrix::from_fn(r, c, |_, _| StandardNormal.sample(&mut *rng))
}

fn random_orthogonal(rng: &mut ChaCha8Rng, n: usize) -> DMatrix<f64> {
    gaussian_matrix(rng, n, n).qr().q()
}

/// `(S, J)` with `SᵀJS = m`, dropping eigenvalues below `drop_below` in
/// magnitude.
fn factor(m: &DMatrix<f64>, drop_below: f64) -> Result<(DMatrix<f64>, Vec<f64>)> {
    let eig = linalg::sym_eig(m)?;
    let keep: Vec<usize> = (0..eig.dim()).filter(|&i| eig.eigenvalues[i].abs() > drop_below).collect();
    let mut s = DMatrix::zeros(keep.len(), m.ncols());
    let mut signs = Vec::with_capacity(keep.len());
    for (r, &i) in keep.iter().enumerate() {
        let l = eig.eigenvalues[i];
        s.row_mut(r).copy_from(&(eig.eigenvectors.column(i).transpose() * l.abs().sqrt()));
        signs.push(if l < 0.0 { -1.0 } else { 1.0 });
    }
    Ok((s, signs))
}

/// Seeded random problem whose PSD interval is nonempty with nonempty
/// boundary eigenspaces.
pub fn planted_problem(config: &GeneratorConfig, seed: u64) -> Result<Problem> {
    let n_eff = config.n.saturating_sub(config.common_null_dim);
    if n_eff < 2 || config.kernel_dim + 2 > n_eff {
        return Err(Error::InvalidProblem(format!(
            "n = {} leaves no room for both boundary eigenvalues (kernel {}, common null {})",
            config.n, config.kernel_dim, config.common_null_dim
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (lo, hi) = match config.interval {
        Some((a, b)) if a < b && a.is_finite() && b.is_finite() => (a, b),
        Some((a, b)) => return Err(Error::InvalidProblem(format!("planted interval [{a}, {b}] is not proper"))),
        None => {
            let lo = rng.random_range(-2.0..1.0);
            (lo, lo + rng.random_range(0.25..2.5))
        }
    };
    let kappa = 0.5 * (hi - lo);
    let rho = 0.5 * (hi + lo);

    let r = gaussian_matrix(&mut rng, n_eff, n_eff);
    let m = linalg::symmetrize(&(&r * r.transpose() / n_eff as f64 + DMatrix::identity(n_eff, n_eff) * 0.5));
    let mut spectrum = vec![1.0 / kappa, -1.0 / kappa];
    spectrum.extend(std::iter::repeat_n(0.0, config.kernel_dim));
    while spectrum.len() < n_eff {
        let mut g: f64 = rng.random_range(-0.95..0.95);
        if g.abs() < 0.05 {
            g = 0.05_f64.copysign(g);
        }
        spectrum.push(g / kappa);
    }
    let q = random_orthogonal(&mut rng, n_eff);
    let g = linalg::symmetrize(&(&q * DMatrix::from_diagonal(&DVector::from_vec(spectrum)) * q.transpose()));
    let half = linalg::psd_sqrt(&m, &ToleranceConfig::default())?;
    let b = linalg::symmetrize(&(&half * g * &half));
    let a = linalg::symmetrize(&(&m - &b * rho));

    let (mut t, jk) = factor(&a, 0.0)?;
    let (mut v, je) = factor(&b, 1e-8 * linalg::max_abs(&b))?;
    if config.common_null_dim > 0 {
        let rot = random_orthogonal(&mut rng, config.n);
        let pad = |s: &DMatrix<f64>| s.clone().resize_horizontally(config.n, 0.0) * rot.transpose();
        t = pad(&t);
        v = pad(&v);
    }
    let w0 = DVector::from_fn(t.nrows(), |_, _| StandardNormal.sample(&mut rng));
    let z0 = DVector::from_fn(v.nrows(), |_, _| StandardNormal.sample(&mut rng));
    Problem::new(
        t,
        KreinSignature::from_signs(&jk)?,
        v,
        KreinSignature::from_signs(&je)?,
        w0,
        z0,
        ToleranceConfig::default(),
    )
}
