use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result, Side};
use crate::linalg;
use crate::oracle::{self, SampleConfig};
use crate::pencil::{psd_interval, reduce_pencil, PsdInterval, SubspaceDims};
use crate::solver::problem::{deflate, DeflatedProblem, Problem};
use crate::solver::secular::{reduced_rhs, secular_solve};
use crate::solver::solution::{assemble_solution, verify_solution, SolutionSet, VerificationReport};

/// Result of the degenerate fallback.
#[derive(Debug, Clone, PartialEq)]
pub enum DegenerateOutcome {
    /// A point passing every optimality check was found.
    Solved(SolutionSet),
    /// No candidate multiplier produced a verified point.
    NoVerifiedSolution,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SolveStatus {
    /// The objective tends to `−∞` along `x0 + t·certificate`.
    UnboundedBelow { certificate: DVector<f64> },
    Solved(SolutionSet),
    /// The required boundary eigenspace is trivial.
    InfimumNotAttained { side: Side },
    Degenerate(DegenerateOutcome),
}

impl SolveStatus {
    pub fn name(&self) -> &'static str {
        match self {
            SolveStatus::UnboundedBelow { .. } => "UNBOUNDED_BELOW",
            SolveStatus::Solved(_) => "SOLVED",
            SolveStatus::InfimumNotAttained { .. } => "INFIMUM_NOT_ATTAINED",
            SolveStatus::Degenerate(_) => "DEGENERATE",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Diagnostics {
    pub interval: Option<PsdInterval>,
    pub kappa: Option<f64>,
    pub dims: Option<SubspaceDims>,
    /// Dimension of `N(T) ∩ N(V)`.
    pub common_null_dim: usize,
    /// Whether `Θ` came out as a singleton (main path only).
    pub singleton: Option<bool>,
    pub verification: Option<VerificationReport>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveOutcome {
    pub status: SolveStatus,
    pub diagnostics: Diagnostics,
}

impl SolveOutcome {
    /// Solution set for `Solved` and degenerate-solved outcomes.
    pub fn solution(&self) -> Option<&SolutionSet> {
        match &self.status {
            SolveStatus::Solved(s) | SolveStatus::Degenerate(DegenerateOutcome::Solved(s)) => Some(s),
            _ => None,
        }
    }
}

/// Budgets tried when searching for an unboundedness certificate.
const CERTIFICATE_BUDGETS: [usize; 3] = [10_000, 100_000, 400_000];

/// Full solve: deflation, PSD interval, reduction, secular equation,
/// assembly and verification.
pub fn solve(problem: &Problem) -> Result<SolveOutcome> {
    let tol = problem.tol;
    let deflated = deflate(problem);
    let mut diagnostics = Diagnostics {
        common_null_dim: deflated.null_basis.ncols(),
        ..Default::default()
    };
    let pair = deflated.gram_pair()?;
    let interval = psd_interval(&pair, &tol)?;
    diagnostics.interval = Some(interval);

    match interval {
        PsdInterval::Empty { .. } => {
            let scale = problem.scale();
            for (k, count) in CERTIFICATE_BUDGETS.into_iter().enumerate() {
                let config = SampleConfig {
                    seed: 0x5eed_0000 + k as u64,
                    count,
                    ..SampleConfig::default()
                };
                if let Some(y) = oracle::find_negative_neutral_direction(&pair.a, &pair.b, &config, &tol, scale) {
                    return Ok(SolveOutcome {
                        status: SolveStatus::UnboundedBelow {
                            certificate: deflated.lift(&y),
                        },
                        diagnostics,
                    });
                }
            }
            diagnostics.note = Some("empty PSD interval but no certificate found within budget".into());
            Ok(SolveOutcome {
                status: SolveStatus::Degenerate(DegenerateOutcome::NoVerifiedSolution),
                diagnostics,
            })
        }
        PsdInterval::Point(_) => degenerate_with(&deflated, &interval, diagnostics),
        PsdInterval::Interval { .. } => {
            let pencil = match reduce_pencil(&pair, &interval, &tol) {
                Ok(p) => p,
                Err(Error::SingularM { .. }) | Err(Error::BoundaryEigenspaceMissing { .. }) => {
                    diagnostics.note = Some("midpoint pencil is singular after deflation".into());
                    return degenerate_with(&deflated, &interval, diagnostics);
                }
                Err(e) => return Err(e),
            };
            diagnostics.kappa = Some(pencil.kappa);
            diagnostics.dims = Some(pencil.dims());
            let rhs = reduced_rhs(&deflated, &pencil)?;
            let theta = match secular_solve(&pencil, &rhs, &tol) {
                Ok(t) => t,
                Err(no) => {
                    return Ok(SolveOutcome {
                        status: SolveStatus::InfimumNotAttained { side: no.side },
                        diagnostics,
                    })
                }
            };
            diagnostics.singleton = Some(theta.is_singleton());
            let set = assemble_solution(&deflated, &pencil, &rhs, &theta);
            let report = verify_solution(problem, &set.representative(), set.lambda);
            let pass = report.pass;
            diagnostics.verification = Some(report);
            if pass {
                return Ok(SolveOutcome {
                    status: SolveStatus::Solved(set),
                    diagnostics,
                });
            }
            diagnostics.note = Some("secular solution failed verification; used the fallback search".into());
            degenerate_with(&deflated, &interval, diagnostics)
        }
    }
}

fn degenerate_with(deflated: &DeflatedProblem, interval: &PsdInterval, mut diagnostics: Diagnostics) -> Result<SolveOutcome> {
    let (outcome, report) = degenerate_search(deflated, interval)?;
    if report.is_some() {
        diagnostics.verification = report;
    }
    Ok(SolveOutcome {
        status: SolveStatus::Degenerate(outcome),
        diagnostics,
    })
}

/// Fallback for point intervals and singular midpoint pencils: searches a
/// fixed list of multipliers for a point satisfying the optimality conditions.
pub fn solve_degenerate(problem: &Problem, interval: &PsdInterval) -> Result<SolveOutcome> {
    let deflated = deflate(problem);
    let diagnostics = Diagnostics {
        interval: Some(*interval),
        common_null_dim: deflated.null_basis.ncols(),
        ..Default::default()
    };
    degenerate_with(&deflated, interval, diagnostics)
}

/// Candidate multipliers: the point itself, or both endpoints, the midpoint
/// and 11 interior grid points.
pub fn degenerate_candidates(interval: &PsdInterval) -> Vec<f64> {
    match *interval {
        PsdInterval::Empty { .. } => Vec::new(),
        PsdInterval::Point(r) => vec![r],
        PsdInterval::Interval { lower, upper } => {
            let mut v = vec![lower, 0.5 * (lower + upper), upper];
            v.extend((1..=11).map(|k| lower + (upper - lower) * k as f64 / 12.0).filter(|&l| l != 0.5 * (lower + upper)));
            v
        }
    }
}

fn degenerate_search(deflated: &DeflatedProblem, interval: &PsdInterval) -> Result<(DegenerateOutcome, Option<VerificationReport>)> {
    let problem = &deflated.problem;
    let tol = &problem.tol;
    let scale = problem.scale();
    let pair = deflated.gram_pair()?;
    let mut last = None;
    for lambda in degenerate_candidates(interval) {
        let s = pair.combination(lambda);
        let rhs = deflated.normal_rhs(lambda);
        let x_hat = linalg::moore_penrose(&s, tol) * &rhs;
        if (&s * &x_hat - &rhs).norm() > tol.residual_tol * scale {
            continue;
        }
        let k = linalg::nullspace_basis(&s, tol);
        let x_full = deflated.lift(&x_hat);
        let r0 = problem.constraint(&x_full);
        let c = if k.ncols() == 0 {
            (r0.abs() <= tol.residual_tol * scale).then(|| DVector::zeros(0))
        } else {
            let p = linalg::symmetrize(&(k.transpose() * &pair.b * &k));
            let v_res = &deflated.v_r * &x_hat - &problem.z0;
            let b = k.transpose() * (deflated.v_r.transpose() * (problem.je.matrix() * v_res));
            find_quadratic_root(&p, &b, r0, tol.residual_tol * scale)
        };
        let Some(c) = c else { continue };
        let y = if k.ncols() == 0 { x_hat.clone() } else { &x_hat + &k * c };
        let x = deflated.lift(&y);
        let report = verify_solution(problem, &x, lambda);
        if report.pass {
            let set = SolutionSet {
                min_value: problem.objective(&x),
                particular: x,
                lambda,
                ellipsoid: None,
                null_part: deflated.null_basis.clone(),
            };
            return Ok((DegenerateOutcome::Solved(set), Some(report)));
        }
        last = Some(report);
    }
    Ok((DegenerateOutcome::NoVerifiedSolution, last))
}

/// Finds `c` with `cᵀPc + 2bᵀc + r0 = 0`, or `None` when the quadratic has
/// no real root. `zero_tol` decides when `r0` already counts as zero.
pub fn find_quadratic_root(p: &DMatrix<f64>, b: &DVector<f64>, r0: f64, zero_tol: f64) -> Option<DVector<f64>> {
    let k = b.len();
    if r0.abs() <= zero_tol {
        return Some(DVector::zeros(k));
    }
    // Normalize so that q(0) > 0.
    let sign = r0.signum();
    let eig = linalg::sym_eig(&(p * sign)).ok()?;
    let d = eig.eigenvectors.transpose() * (b * sign);
    let r = r0.abs();
    let curvature_band = 1e-12 * eig.eigenvalues.amax().max(1.0);
    let along = |i: usize, t: f64| {
        let mut s = DVector::zeros(k);
        s[i] = t;
        &eig.eigenvectors * s
    };

    // Direction of negative curvature: q → −∞ along it.
    if let Some(i) = (0..k).rfind(|&i| eig.eigenvalues[i] < -curvature_band) {
        let (di, li) = (d[i], eig.eigenvalues[i]);
        let disc = (di * di - li * r).sqrt();
        let t = (-di - disc) / li;
        return Some(along(i, t));
    }
    // Flat direction with a linear term.
    if let Some(i) = (0..k)
        .filter(|&i| eig.eigenvalues[i].abs() <= curvature_band)
        .max_by(|&a, &b| d[a].abs().total_cmp(&d[b].abs()))
    {
        if d[i].abs() > 1e-14 * (1.0 + d.amax()) {
            return Some(along(i, -r / (2.0 * d[i])));
        }
    }
    // Convex case: root exists iff the minimum value is ≤ 0.
    let mut m = 0.0;
    let mut s_star = DVector::zeros(k);
    for i in 0..k {
        let li = eig.eigenvalues[i];
        if li > curvature_band {
            s_star[i] = -d[i] / li;
            m += d[i] * d[i] / li;
        }
    }
    if r - m > zero_tol || m <= 0.0 {
        return None;
    }
    // q(t·s*) = m t² − 2 m t + r.
    let t = 1.0 - (1.0 - r / m).max(0.0).sqrt();
    Some(&eig.eigenvectors * (s_star * t))
}

/// Lagrangian lower bound `min_x [Tx − w0]² + λ[Vx − z0]²` for a multiplier
/// in the PSD interval; `None` when the minimum is `−∞`.
pub fn lagrangian_bound(problem: &Problem, lambda: f64) -> Option<f64> {
    let tol = &problem.tol;
    let scale = problem.scale();
    let s = linalg::symmetrize(&(problem.a() + problem.b() * lambda));
    if linalg::lambda_min(&s) < -tol.psd_tol * scale {
        return None;
    }
    let rhs = problem.t_adj_w0() + problem.v_adj_z0() * lambda;
    let x = linalg::moore_penrose(&s, tol) * &rhs;
    if (&s * &x - &rhs).norm() > tol.residual_tol * scale {
        return None;
    }
    Some(problem.objective(&x) + lambda * problem.constraint(&x))
}

/// Facts behind the solvable-for-all-data test.
#[derive(Debug, Clone, PartialEq)]
pub struct ExistenceReport {
    pub interval: Option<PsdInterval>,
    /// `ρ− < ρ+`.
    pub proper_interval: bool,
    /// `A + ρB` positive definite at the midpoint after deflation.
    pub m_positive_definite: bool,
    pub n_plus_nontrivial: bool,
    pub n_minus_nontrivial: bool,
    pub dims: Option<SubspaceDims>,
    pub common_null_dim: usize,
    pub verdict: bool,
    pub note: String,
}

/// Decides whether a solution exists for every choice of data `(w0, z0)`.
pub fn existence_for_all_data(problem: &Problem) -> Result<ExistenceReport> {
    let tol = problem.tol;
    let deflated = deflate(problem);
    let common_null_dim = deflated.null_basis.ncols();
    let note = if common_null_dim == 0 {
        "for generic data the solution set is a single point".to_string()
    } else {
        format!("for generic data the solution set is an affine manifold parallel to N(T) ∩ N(V) (dimension {common_null_dim})")
    };
    let mut report = ExistenceReport {
        interval: None,
        proper_interval: false,
        m_positive_definite: false,
        n_plus_nontrivial: false,
        n_minus_nontrivial: false,
        dims: None,
        common_null_dim,
        verdict: false,
        note,
    };
    let pair = deflated.gram_pair()?;
    let interval = psd_interval(&pair, &tol)?;
    report.interval = Some(interval);
    if !matches!(interval, PsdInterval::Interval { .. }) {
        return Ok(report);
    }
    report.proper_interval = true;
    match reduce_pencil(&pair, &interval, &tol) {
        Ok(p) => {
            let dims = p.dims();
            report.m_positive_definite = true;
            report.n_plus_nontrivial = dims.n_plus >= 1;
            report.n_minus_nontrivial = dims.n_minus >= 1;
            report.dims = Some(dims);
        }
        Err(Error::SingularM { .. }) => {}
        Err(Error::BoundaryEigenspaceMissing { side }) => {
            report.m_positive_definite = true;
            report.n_plus_nontrivial = side != Side::Plus;
            report.n_minus_nontrivial = side != Side::Minus;
        }
        Err(e) => return Err(e),
    }
    report.verdict = report.proper_interval && report.m_positive_definite && report.n_plus_nontrivial && report.n_minus_nontrivial;
    Ok(report)
}
