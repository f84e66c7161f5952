//! Signature-weighted dense linear algebra.
//!
//! The indefinite inner product on a codomain of dimension `m` is
//! `[x, y] = yᵀ J x` for a symmetric invertible `J`. The domain of every
//! operator carries the Euclidean inner product, so the indefinite adjoint of
//! `T` is simply `Tᵀ J`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};
use crate::tolerance::ToleranceConfig;

/// Gram matrix of an indefinite inner product.
#[derive(Debug, Clone, PartialEq)]
pub struct KreinSignature {
    gram: DMatrix<f64>,
}

impl KreinSignature {
    /// Validates symmetry and invertibility of `gram`.
    pub fn new(gram: DMatrix<f64>) -> Result<Self> {
        if gram.nrows() != gram.ncols() || gram.nrows() == 0 {
            return Err(Error::InvalidSignature(format!(
                "expected a nonempty square matrix, got {}x{}",
                gram.nrows(),
                gram.ncols()
            )));
        }
        let asym = max_abs(&(&gram - gram.transpose()));
        if asym > 4.0 * f64::EPSILON * max_abs(&gram).max(1.0) {
            return Err(Error::InvalidSignature(format!("not symmetric (asymmetry {asym:e})")));
        }
        let sigma = singular_values(&gram);
        let smax = sigma[0];
        let smin = sigma[sigma.len() - 1];
        if !(smin > ToleranceConfig::default().rank_tol * smax.max(1.0)) {
            return Err(Error::InvalidSignature(format!(
                "singular (smallest singular value {smin:e})"
            )));
        }
        Ok(Self { gram })
    }

    /// Canonical diagonal signature; every entry must be exactly ±1.
    pub fn from_signs(signs: &[f64]) -> Result<Self> {
        if signs.is_empty() {
            return Err(Error::InvalidSignature("empty signature".into()));
        }
        if let Some(bad) = signs.iter().find(|s| **s != 1.0 && **s != -1.0) {
            return Err(Error::InvalidSignature(format!("diagonal entry {bad} is not ±1")));
        }
        Ok(Self {
            gram: DMatrix::from_diagonal(&DVector::from_column_slice(signs)),
        })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            gram: DMatrix::identity(dim, dim),
        }
    }

    /// Block-diagonal signature `diag(self, scale · other)`.
    pub fn block_diag(&self, other: &KreinSignature, scale: f64) -> Result<Self> {
        let (m1, m2) = (self.dim(), other.dim());
        let mut gram = DMatrix::zeros(m1 + m2, m1 + m2);
        gram.view_mut((0, 0), (m1, m1)).copy_from(&self.gram);
        gram.view_mut((m1, m1), (m2, m2)).copy_from(&(other.matrix() * scale));
        Self::new(gram)
    }

    pub fn dim(&self) -> usize {
        self.gram.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.gram
    }

    /// `[x, y] = yᵀ J x`.
    pub fn inner(&self, x: &DVector<f64>, y: &DVector<f64>) -> f64 {
        y.dot(&(&self.gram * x))
    }

    pub fn quad(&self, x: &DVector<f64>) -> f64 {
        self.inner(x, x)
    }

    /// Diagonal entries when the signature is diagonal.
    pub fn diagonal_entries(&self) -> Option<Vec<f64>> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                if i != j && self.gram[(i, j)] != 0.0 {
                    return None;
                }
            }
        }
        Some((0..n).map(|i| self.gram[(i, i)]).collect())
    }
}

/// Eigenvalues sorted descending with matching orthonormal eigenvectors.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    pub eigenvalues: DVector<f64>,
    pub eigenvectors: DMatrix<f64>,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn min(&self) -> f64 {
        self.eigenvalues[self.dim() - 1]
    }

    pub fn reconstruct(&self) -> DMatrix<f64> {
        let q = &self.eigenvectors;
        q * DMatrix::from_diagonal(&self.eigenvalues) * q.transpose()
    }

    /// Columns of the eigenvector matrix at `indices`.
    pub fn columns(&self, indices: &[usize]) -> DMatrix<f64> {
        select_columns(&self.eigenvectors, indices)
    }
}

/// `T# = Tᵀ J_cod`, the adjoint from the Krein codomain to the Euclidean domain.
pub fn indefinite_adjoint(t: &DMatrix<f64>, j_cod: &KreinSignature) -> Result<DMatrix<f64>> {
    if t.nrows() != j_cod.dim() {
        return Err(Error::DimensionMismatch(format!(
            "operator has {} rows but signature has dimension {}",
            t.nrows(),
            j_cod.dim()
        )));
    }
    Ok(t.transpose() * j_cod.matrix())
}

/// `Tᵀ J T`, symmetrized.
pub fn gram(t: &DMatrix<f64>, j: &KreinSignature) -> Result<DMatrix<f64>> {
    let adj = indefinite_adjoint(t, j)?;
    Ok(symmetrize(&(adj * t)))
}

pub fn symmetrize(s: &DMatrix<f64>) -> DMatrix<f64> {
    (s + s.transpose()) * 0.5
}

pub fn max_abs(s: &DMatrix<f64>) -> f64 {
    s.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()))
}

pub fn select_columns(m: &DMatrix<f64>, indices: &[usize]) -> DMatrix<f64> {
    DMatrix::from_fn(m.nrows(), indices.len(), |i, j| m[(i, indices[j])])
}

/// Symmetric eigendecomposition, eigenvalues sorted descending.
pub fn sym_eig(s: &DMatrix<f64>) -> Result<SpectralDecomposition> {
    if s.nrows() != s.ncols() {
        return Err(Error::DimensionMismatch(format!(
            "sym_eig needs a square matrix, got {}x{}",
            s.nrows(),
            s.ncols()
        )));
    }
    let asym = max_abs(&(s - s.transpose()));
    if asym > 1e-10 * (1.0 + max_abs(s)) {
        return Err(Error::NotSymmetric { asymmetry: asym });
    }
    let n = s.nrows();
    if n == 0 {
        return Ok(SpectralDecomposition {
            eigenvalues: DVector::zeros(0),
            eigenvectors: DMatrix::zeros(0, 0),
        });
    }
    let eig = SymmetricEigen::new(symmetrize(s));
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    Ok(SpectralDecomposition {
        eigenvalues: DVector::from_iterator(n, order.iter().map(|&i| eig.eigenvalues[i])),
        eigenvectors: select_columns(&eig.eigenvectors, &order),
    })
}

/// Smallest eigenvalue of a symmetric matrix (symmetry is not checked).
pub fn lambda_min(s: &DMatrix<f64>) -> f64 {
    if s.nrows() == 0 {
        return 0.0;
    }
    symmetrize(s).symmetric_eigenvalues().min()
}

/// `M^{1/2}` and `M^{-1/2}` for a symmetric positive definite matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SqrtPair {
    pub half: DMatrix<f64>,
    pub inv_half: DMatrix<f64>,
}

/// PSD square root. Eigenvalues in `[-psd_tol·‖M‖, 0)` are clamped to zero.
pub fn psd_sqrt(m: &DMatrix<f64>, tol: &ToleranceConfig) -> Result<DMatrix<f64>> {
    let eig = sym_eig(m)?;
    check_psd(&eig, tol)?;
    Ok(spectral_map(&eig, |l| l.max(0.0).sqrt()))
}

/// Both square roots; fails with `Singular` when `M` is rank deficient.
pub fn psd_sqrt_pair(m: &DMatrix<f64>, tol: &ToleranceConfig) -> Result<SqrtPair> {
    let eig = sym_eig(m)?;
    let norm = check_psd(&eig, tol)?;
    if eig.dim() > 0 && !(eig.min() > tol.rank_tol * norm) {
        return Err(Error::Singular {
            min_eigenvalue: eig.min(),
        });
    }
    Ok(SqrtPair {
        half: spectral_map(&eig, |l| l.sqrt()),
        inv_half: spectral_map(&eig, |l| 1.0 / l.sqrt()),
    })
}

fn check_psd(eig: &SpectralDecomposition, tol: &ToleranceConfig) -> Result<f64> {
    if eig.dim() == 0 {
        return Ok(0.0);
    }
    let norm = eig.max().abs().max(eig.min().abs());
    if eig.min() < -tol.psd_tol * norm {
        return Err(Error::NotPsd {
            min_eigenvalue: eig.min(),
        });
    }
    Ok(norm)
}

fn spectral_map(eig: &SpectralDecomposition, f: impl Fn(f64) -> f64) -> DMatrix<f64> {
    let q = &eig.eigenvectors;
    let d = DVector::from_iterator(eig.dim(), eig.eigenvalues.iter().map(|&l| f(l)));
    symmetrize(&(q * DMatrix::from_diagonal(&d) * q.transpose()))
}

/// Thin SVD `s = left · diag(sigma) · right[:, ..k]ᵀ` with `sigma` sorted
/// descending and `right` a full `n×n` orthogonal matrix, so that trailing
/// columns span the numerical nullspace.
///
/// One-sided Jacobi on `s` padded with zero rows to at least square shape.
/// nalgebra's bidiagonal SVD loses digits on rank-deficient input (errors of
/// order 1e-5 on small exactly rank-deficient matrices), while Jacobi keeps
/// backward error at roundoff level.
struct Svd {
    sigma: Vec<f64>,
    left: DMatrix<f64>,
    right: DMatrix<f64>,
}

fn jacobi_svd(s: &DMatrix<f64>) -> Svd {
    let (m, n) = s.shape();
    let mut u = if m >= n { s.clone() } else { s.clone().resize_vertically(n, 0.0) };
    let mut v = DMatrix::<f64>::identity(n, n);
    for _sweep in 0..80 {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = u.column(p).norm_squared();
                let beta = u.column(q).norm_squared();
                let gamma = u.column(p).dot(&u.column(q));
                if gamma == 0.0 || gamma.abs() <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let sn = c * t;
                for mat in [&mut u, &mut v] {
                    for i in 0..mat.nrows() {
                        let (a, b) = (mat[(i, p)], mat[(i, q)]);
                        mat[(i, p)] = c * a - sn * b;
                        mat[(i, q)] = sn * a + c * b;
                    }
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let norms: Vec<f64> = (0..n).map(|j| u.column(j).norm()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| norms[b].total_cmp(&norms[a]));
    let k = m.min(n);
    let sigma: Vec<f64> = order.iter().take(k).map(|&j| norms[j]).collect();
    let right = DMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    let left = DMatrix::from_fn(m, k, |i, j| {
        let sj = sigma[j];
        if sj > 0.0 {
            u[(i, order[j])] / sj
        } else {
            0.0
        }
    });
    Svd { sigma, left, right }
}

/// Singular values, descending.
pub fn singular_values(s: &DMatrix<f64>) -> Vec<f64> {
    if s.nrows() == 0 || s.ncols() == 0 {
        return Vec::new();
    }
    jacobi_svd(s).sigma
}

fn rank_from_sigma(sigma: &[f64], tol: &ToleranceConfig) -> usize {
    let smax = sigma.first().copied().unwrap_or(0.0);
    if smax == 0.0 {
        return 0;
    }
    sigma.iter().filter(|&&s| s > tol.rank_tol * smax).count()
}

/// Numerical rank under the relative cutoff `rank_tol · σ_max`.
pub fn numerical_rank(s: &DMatrix<f64>, tol: &ToleranceConfig) -> usize {
    if s.nrows() == 0 || s.ncols() == 0 {
        return 0;
    }
    rank_from_sigma(&singular_values(s), tol)
}

/// Orthonormal columns spanning the numerical nullspace of `s`.
pub fn nullspace_basis(s: &DMatrix<f64>, tol: &ToleranceConfig) -> DMatrix<f64> {
    row_and_null_spaces(s, tol).1
}

/// Orthonormal bases of the row space (`N(s)^⊥`) and nullspace of `s`.
pub fn row_and_null_spaces(s: &DMatrix<f64>, tol: &ToleranceConfig) -> (DMatrix<f64>, DMatrix<f64>) {
    let n = s.ncols();
    if n == 0 {
        return (DMatrix::zeros(0, 0), DMatrix::zeros(0, 0));
    }
    if s.nrows() == 0 {
        return (DMatrix::zeros(n, 0), DMatrix::identity(n, n));
    }
    let svd = jacobi_svd(s);
    let rank = rank_from_sigma(&svd.sigma, tol);
    let row = svd.right.columns(0, rank).into_owned();
    let null = svd.right.columns(rank, n - rank).into_owned();
    (row, null)
}

/// Moore-Penrose pseudoinverse with the relative cutoff `rank_tol · σ_max`.
pub fn moore_penrose(s: &DMatrix<f64>, tol: &ToleranceConfig) -> DMatrix<f64> {
    let (m, n) = s.shape();
    if m == 0 || n == 0 {
        return DMatrix::zeros(n, m);
    }
    let svd = jacobi_svd(s);
    let mut pinv = DMatrix::zeros(n, m);
    let smax = svd.sigma.first().copied().unwrap_or(0.0);
    for (k, &sk) in svd.sigma.iter().enumerate() {
        if sk > tol.rank_tol * smax {
            pinv += (svd.right.column(k) * svd.left.column(k).transpose()) / sk;
        }
    }
    pinv
}

/// Stacks `top` over `bottom` (same column count).
pub fn vstack(top: &DMatrix<f64>, bottom: &DMatrix<f64>) -> DMatrix<f64> {
    assert_eq!(top.ncols(), bottom.ncols());
    let mut out = DMatrix::zeros(top.nrows() + bottom.nrows(), top.ncols());
    out.view_mut((0, 0), top.shape()).copy_from(top);
    out.view_mut((top.nrows(), 0), bottom.shape()).copy_from(bottom);
    out
}

/// Orthogonal projection of `x` onto the span of orthonormal columns `basis`.
pub fn project(basis: &DMatrix<f64>, x: &DVector<f64>) -> DVector<f64> {
    if basis.ncols() == 0 {
        return DVector::zeros(x.len());
    }
    basis * (basis.transpose() * x)
}
