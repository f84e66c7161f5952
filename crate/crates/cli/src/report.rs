use nalgebra::{DMatrix, DVector};
use serde_json::{json, Value};

use qp1qec::{DegenerateOutcome, ExistenceReport, Problem, PsdInterval, SolveOutcome, SolveStatus, SubspaceDims, VerificationReport};

fn vector(v: &DVector<f64>) -> Value {
    json!(v.iter().copied().collect::<Vec<f64>>())
}

/// Matrices are written as lists of column vectors.
fn columns(m: &DMatrix<f64>) -> Value {
    Value::Array(m.column_iter().map(|c| json!(c.iter().copied().collect::<Vec<f64>>())).collect())
}

fn interval(iv: Option<&PsdInterval>) -> Value {
    match iv {
        None => Value::Null,
        Some(PsdInterval::Empty { rho_star, max_lambda_min }) => json!({
            "kind": "empty",
            "rho_minus": null,
            "rho_plus": null,
            "rho_star": rho_star,
            "max_lambda_min": max_lambda_min,
        }),
        Some(iv) => {
            let (lo, hi) = iv.bounds().expect("nonempty");
            json!({ "kind": iv.kind(), "rho_minus": lo, "rho_plus": hi })
        }
    }
}

fn dims(d: Option<&SubspaceDims>) -> Value {
    match d {
        None => Value::Null,
        Some(d) => json!({
            "N_plus": d.n_plus,
            "N_minus": d.n_minus,
            "N_G": d.n_g,
            "D_plus": d.d_plus,
            "D_minus": d.d_minus,
        }),
    }
}

fn kappa(iv: Option<&PsdInterval>) -> Value {
    match iv {
        Some(PsdInterval::Interval { lower, upper }) => json!(0.5 * (upper - lower)),
        _ => Value::Null,
    }
}

pub fn existence(e: &ExistenceReport) -> Value {
    json!({
        "verdict": e.verdict,
        "proper_interval": e.proper_interval,
        "m_positive_definite": e.m_positive_definite,
        "N_plus_nontrivial": e.n_plus_nontrivial,
        "N_minus_nontrivial": e.n_minus_nontrivial,
        "common_null_dim": e.common_null_dim,
        "note": e.note,
    })
}

pub fn analysis(e: &ExistenceReport) -> Value {
    json!({
        "interval": interval(e.interval.as_ref()),
        "kappa": kappa(e.interval.as_ref()),
        "subspace_dims": dims(e.dims.as_ref()),
        "existence_for_all_data": existence(e),
    })
}

fn residuals(v: Option<&VerificationReport>) -> Value {
    match v {
        None => Value::Null,
        Some(v) => json!({
            "normal_equation": v.normal_residual,
            "constraint": v.constraint_residual,
            "orthogonality": v.orthogonality_residual,
            "min_eigenvalue": v.min_eigenvalue,
            "psd": v.psd,
            "lambda_in_interval": v.lambda_in_interval,
            "pass": v.pass,
        }),
    }
}

pub fn verification(v: &VerificationReport, lambda: f64) -> Value {
    let mut r = json!({
        "lambda": lambda,
        "pass": v.pass,
        "residuals": residuals(Some(v)),
    });
    r["interval"] = match v.interval {
        Some((lo, hi)) => json!({ "rho_minus": lo, "rho_plus": hi }),
        None => Value::Null,
    };
    r
}

pub fn outcome(problem: &Problem, out: &SolveOutcome) -> Value {
    let d = &out.diagnostics;
    let mut r = json!({
        "status": out.status.name(),
        "interval": interval(d.interval.as_ref()),
        "kappa": d.kappa,
        "subspace_dims": dims(d.dims.as_ref()),
        "residuals": residuals(d.verification.as_ref()),
        "lambda": null,
        "min_value": null,
        "solution": null,
    });
    if let Some(s) = out.solution() {
        r["lambda"] = json!(s.lambda);
        r["min_value"] = json!(s.min_value);
        r["solution"] = json!({
            "particular": vector(&s.particular),
            "ellipsoid_map": s.ellipsoid.as_ref().map(|e| columns(&(&e.map * e.alpha))),
            "radius": s.radius(),
            "singleton": s.is_singleton(),
            "null_basis": columns(&s.null_part),
        });
    }
    match &out.status {
        SolveStatus::UnboundedBelow { certificate } => {
            r["certificate"] = vector(certificate);
            let yay = (certificate.transpose() * problem.a() * certificate)[(0, 0)];
            r["certificate_curvature"] = json!(yay);
        }
        SolveStatus::InfimumNotAttained { side } => r["side"] = json!(side.to_string()),
        SolveStatus::Degenerate(sub) => {
            r["degenerate"] = json!(match sub {
                DegenerateOutcome::Solved(_) => "SOLVED",
                DegenerateOutcome::NoVerifiedSolution => "NO_VERIFIED_SOLUTION",
            })
        }
        SolveStatus::Solved(_) => {}
    }
    if let Some(note) = &d.note {
        r["note"] = json!(note);
    }
    r
}
