//! Brute-force cross-checks over the neutral cone `{y : yᵀBy = 0}`.

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::linalg::{self, SpectralDecomposition};
use crate::pencil::{psd_interval, PsdInterval};
use crate::solver::problem::{base_point, deflate, Problem};
use crate::tolerance::ToleranceConfig;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleConfig {
    pub seed: u64,
    /// Number of cone samples; must be at least 1.
    pub count: usize,
    pub refine_iters: usize,
    /// Largest step `t` on each sampled ray.
    pub max_scale: f64,
}

impl Default for SampleConfig {
    fn default() -> Self {
        Self {
            seed: 0x5eed,
            count: 10_000,
            refine_iters: 50,
            max_scale: 1e4,
        }
    }
}

/// Samples the cone in the eigenbasis of `B`.
struct ConeSampler {
    eig: SpectralDecomposition,
}

impl ConeSampler {
    fn new(b: &DMatrix<f64>) -> Result<Self> {
        let eig = linalg::sym_eig(b)?;
        let band = 1e-12 * b.norm().max(f64::MIN_POSITIVE);
        if eig.max() <= band || eig.min() >= -band {
            return Err(Error::SemidefiniteB);
        }
        Ok(Self { eig })
    }

    fn dim(&self) -> usize {
        self.eig.dim()
    }

    /// Rescales the negative-curvature coordinates so that the form vanishes.
    fn project(&self, z: &mut DVector<f64>) -> bool {
        let (mut p, mut q) = (0.0, 0.0);
        for (zi, &li) in z.iter().zip(self.eig.eigenvalues.iter()) {
            if li > 0.0 {
                p += li * zi * zi;
            } else {
                q -= li * zi * zi;
            }
        }
        if p <= 0.0 || q <= 0.0 {
            return false;
        }
        let s = (p / q).sqrt();
        for (zi, &li) in z.iter_mut().zip(self.eig.eigenvalues.iter()) {
            if li < 0.0 {
                *zi *= s;
            }
        }
        let norm = z.norm();
        *z /= norm;
        true
    }

    /// Unit cone vector in eigencoordinates for sample `index`.
    fn draw(&self, seed: u64, index: usize) -> DVector<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index as u64);
        loop {
            let mut z = DVector::from_fn(self.dim(), |_, _| StandardNormal.sample(&mut rng));
            if self.project(&mut z) {
                return z;
            }
        }
    }

    fn to_original(&self, z: &DVector<f64>) -> DVector<f64> {
        &self.eig.eigenvectors * z
    }
}

/// Deterministic samples `y` with `|yᵀBy| ≤ 1e-12·‖B‖·‖y‖²`.
pub fn sample_neutral_cone(b: &DMatrix<f64>, config: &SampleConfig) -> Result<Vec<DVector<f64>>> {
    let sampler = ConeSampler::new(b)?;
    let band = 1e-12 * b.norm();
    Ok((0..config.count)
        .map(|i| sampler.draw(config.seed, i))
        .map(|z| sampler.to_original(&z))
        .filter(|y| (y.transpose() * b * y)[(0, 0)].abs() <= band * y.norm_squared())
        .collect())
}

/// Coordinate search over the cone minimizing `value` (lower is better).
fn refine<F: Fn(&DVector<f64>) -> f64>(sampler: &ConeSampler, start: &DVector<f64>, iters: usize, value: F) -> (f64, DVector<f64>) {
    let mut z = start.clone();
    let mut best = value(&sampler.to_original(&z));
    let mut step = 0.1;
    for _ in 0..iters {
        let mut improved = false;
        for j in 0..sampler.dim() {
            for sign in [1.0, -1.0] {
                let mut trial = z.clone();
                trial[j] += sign * step;
                if !sampler.project(&mut trial) {
                    continue;
                }
                let v = value(&sampler.to_original(&trial));
                if v < best {
                    best = v;
                    z = trial;
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    (best, sampler.to_original(&z))
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleMin {
    pub value: f64,
    pub point: DVector<f64>,
}

/// Objective along the ray `x0 + t·y`: `a t² + 2 b t + c`.
struct Ray<'a> {
    problem: &'a Problem,
    a: DMatrix<f64>,
    r0: DVector<f64>,
    c: f64,
    grid: Vec<f64>,
}

impl Ray<'_> {
    fn best_t(&self, y: &DVector<f64>) -> (f64, f64) {
        let ty = &self.problem.t * y;
        let a = (y.transpose() * &self.a * y)[(0, 0)];
        let b = self.problem.jk.inner(&self.r0, &ty);
        let f = |t: f64| a * t * t + 2.0 * b * t + self.c;
        let mut best = (self.c, 0.0);
        let mut consider = |t: f64| {
            let v = f(t);
            if v < best.0 {
                best = (v, t);
            }
        };
        for &t in &self.grid {
            consider(t);
            consider(-t);
        }
        if a > 0.0 {
            consider(-b / a);
        }
        best
    }
}

/// Best objective value found over feasible points `x0 + t·y`, `y` in the
/// cone. An upper bound on the true minimum.
pub fn brute_min(problem: &Problem, config: &SampleConfig) -> Result<OracleMin> {
    let x0 = base_point(&problem.v, &problem.z0, &problem.tol)?;
    let sampler = ConeSampler::new(&problem.b())?;
    let r0 = &problem.t * &x0 - &problem.w0;
    let grid_points = 16;
    let ray = Ray {
        problem,
        a: problem.a(),
        c: problem.jk.quad(&r0),
        r0,
        grid: (0..grid_points)
            .map(|k| config.max_scale * 10f64.powf(-7.0 * (grid_points - 1 - k) as f64 / (grid_points - 1) as f64))
            .collect(),
    };

    // Record setters of the running minimum; refining exactly these keeps
    // the result monotone in the budget.
    let mut records: Vec<DVector<f64>> = Vec::new();
    let mut best = OracleMin {
        value: ray.c,
        point: x0.clone(),
    };
    for i in 0..config.count {
        let z = sampler.draw(config.seed, i);
        let y = sampler.to_original(&z);
        let (v, t) = ray.best_t(&y);
        if v < best.value {
            best = OracleMin { value: v, point: &x0 + y * t };
            records.push(z);
        }
    }
    for z in &records {
        let (v, y) = refine(&sampler, z, config.refine_iters, |y| ray.best_t(y).0);
        if v < best.value {
            let t = ray.best_t(&y).1;
            best = OracleMin { value: v, point: &x0 + y * t };
        }
    }
    Ok(best)
}

/// Unit `y` in the cone with `yᵀAy ≤ −psd_tol·scale`, or `None` if the
/// budget ran out.
pub fn find_negative_neutral_direction(
    a: &DMatrix<f64>,
    b: &DMatrix<f64>,
    config: &SampleConfig,
    tol: &ToleranceConfig,
    scale: f64,
) -> Option<DVector<f64>> {
    let sampler = ConeSampler::new(b).ok()?;
    let form = |y: &DVector<f64>| (y.transpose() * a * y)[(0, 0)];
    let mut best: Option<(f64, DVector<f64>)> = None;
    for i in 0..config.count {
        let z = sampler.draw(config.seed, i);
        let v = form(&sampler.to_original(&z));
        if best.as_ref().is_none_or(|(bv, _)| v < *bv) {
            best = Some((v, z));
        }
    }
    let (_, z) = best?;
    let (v, y) = refine(&sampler, &z, config.refine_iters, form);
    let neutral = (y.transpose() * b * &y)[(0, 0)].abs() <= 1e-10 * scale;
    (neutral && v <= -tol.psd_tol * scale).then_some(y)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub lambda: f64,
    pub x: DVector<f64>,
    pub normal_residual: f64,
    pub constraint: f64,
}

/// Pseudoinverse solutions of the normal equation on a uniform grid over the
/// PSD interval (the midpoint when `grid_size == 1`).
pub fn lambda_sweep(problem: &Problem, grid_size: usize) -> Result<Vec<SweepPoint>> {
    let tol = &problem.tol;
    let deflated = deflate(problem);
    let interval = psd_interval(&deflated.gram_pair()?, tol)?;
    let (lo, hi) = match interval {
        PsdInterval::Empty { .. } => return Err(Error::WrongIntervalKind("lambda sweep needs a nonempty interval".into())),
        PsdInterval::Point(r) => (r, r),
        PsdInterval::Interval { lower, upper } => (lower, upper),
    };
    let a = problem.a();
    let b = problem.b();
    let lambdas: Vec<f64> = match grid_size {
        0 => Vec::new(),
        1 => vec![0.5 * (lo + hi)],
        k => (0..k).map(|i| lo + (hi - lo) * i as f64 / (k - 1) as f64).collect(),
    };
    Ok(lambdas
        .into_iter()
        .map(|lambda| {
            let s = linalg::symmetrize(&(&a + &b * lambda));
            let rhs = problem.t_adj_w0() + problem.v_adj_z0() * lambda;
            let x = linalg::moore_penrose(&s, tol) * &rhs;
            SweepPoint {
                lambda,
                normal_residual: (&s * &x - rhs).norm(),
                constraint: problem.constraint(&x),
                x,
            }
        })
        .collect())
}
