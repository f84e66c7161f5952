//! On-disk problem format.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use qp1qec::splines::MixedSplinesProblem;
use qp1qec::{KreinSignature, Problem, ToleranceConfig};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub n: usize,
    #[serde(rename = "mK", default, skip_serializing_if = "Option::is_none")]
    pub m_k: Option<usize>,
    #[serde(rename = "mE")]
    pub m_e: usize,
    /// Row-major `mK × n`.
    #[serde(rename = "T", default, skip_serializing_if = "Option::is_none")]
    pub t: Option<Vec<f64>>,
    /// Diagonal `±1` entries or a full row-major matrix.
    #[serde(rename = "JK", default, skip_serializing_if = "Option::is_none")]
    pub jk: Option<Vec<f64>>,
    #[serde(rename = "V")]
    pub v: Vec<f64>,
    #[serde(rename = "JE")]
    pub je: Vec<f64>,
    /// Target of `T`, or of `W` in splines mode.
    pub w0: Vec<f64>,
    pub z0: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerances: Option<TolerancesFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub splines: Option<SplinesFile>,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TolerancesFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub psd_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_iter: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplinesFile {
    #[serde(rename = "U")]
    pub u: Vec<f64>,
    #[serde(rename = "J1")]
    pub j1: Vec<f64>,
    #[serde(rename = "W")]
    pub w: Vec<f64>,
    #[serde(rename = "J2")]
    pub j2: Vec<f64>,
    pub mu: f64,
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Malformed(e.to_string()))
    }

    pub fn tolerances(&self, override_residual: Option<f64>) -> Result<ToleranceConfig, CliError> {
        let mut tol = ToleranceConfig::default();
        if let Some(t) = self.tolerances {
            tol.rank_tol = t.rank_tol.unwrap_or(tol.rank_tol);
            tol.psd_tol = t.psd_tol.unwrap_or(tol.psd_tol);
            tol.root_tol = t.root_tol.unwrap_or(tol.root_tol);
            tol.residual_tol = t.residual_tol.unwrap_or(tol.residual_tol);
            tol.max_iter = t.max_iter.unwrap_or(tol.max_iter);
        }
        if let Some(r) = override_residual {
            tol = tol.with_residual_tol(r);
        }
        tol.validate().map_err(CliError::from)?;
        Ok(tol)
    }

    pub fn to_problem(&self, tol: ToleranceConfig) -> Result<Problem, CliError> {
        let (Some(m_k), Some(t), Some(jk)) = (self.m_k, &self.t, &self.jk) else {
            return Err(CliError::Malformed("\"mK\", \"T\" and \"JK\" are required outside splines mode".into()));
        };
        let t = matrix("T", t, m_k, self.n)?;
        let jk = signature("JK", jk, m_k)?;
        let v = matrix("V", &self.v, self.m_e, self.n)?;
        let je = signature("JE", &self.je, self.m_e)?;
        let w0 = vector("w0", &self.w0, m_k)?;
        let z0 = vector("z0", &self.z0, self.m_e)?;
        Problem::new(t, jk, v, je, w0, z0, tol).map_err(CliError::from)
    }

    pub fn to_splines(&self, tol: ToleranceConfig) -> Result<MixedSplinesProblem, CliError> {
        let s = self
            .splines
            .as_ref()
            .ok_or_else(|| CliError::Malformed("missing \"splines\" object".into()))?;
        let n = self.n;
        let rows = |name: &str, data: &[f64]| {
            if n == 0 || !data.len().is_multiple_of(n) || data.is_empty() {
                Err(CliError::Dimension(format!("\"{name}\" has {} entries, not a multiple of n = {n}", data.len())))
            } else {
                Ok(data.len() / n)
            }
        };
        let m1 = rows("U", &s.u)?;
        let m2 = rows("W", &s.w)?;
        Ok(MixedSplinesProblem {
            u: matrix("U", &s.u, m1, n)?,
            j1: signature("J1", &s.j1, m1)?,
            w: matrix("W", &s.w, m2, n)?,
            j2: signature("J2", &s.j2, m2)?,
            v: matrix("V", &self.v, self.m_e, n)?,
            je: signature("JE", &self.je, self.m_e)?,
            mu: s.mu,
            w0: vector("w0", &self.w0, m2)?,
            z0: vector("z0", &self.z0, self.m_e)?,
            tol,
        })
    }

    pub fn from_problem(p: &Problem) -> Self {
        let tol = p.tol;
        let defaults = ToleranceConfig::default();
        let tolerances = (tol != defaults).then_some(TolerancesFile {
            rank_tol: Some(tol.rank_tol),
            psd_tol: Some(tol.psd_tol),
            root_tol: Some(tol.root_tol),
            residual_tol: Some(tol.residual_tol),
            max_iter: Some(tol.max_iter),
        });
        Self {
            n: p.dim(),
            m_k: Some(p.t.nrows()),
            m_e: p.v.nrows(),
            t: Some(row_major(&p.t)),
            jk: Some(signature_entries(&p.jk)),
            v: row_major(&p.v),
            je: signature_entries(&p.je),
            w0: p.w0.iter().copied().collect(),
            z0: p.z0.iter().copied().collect(),
            tolerances,
            splines: None,
        }
    }
}

fn row_major(m: &DMatrix<f64>) -> Vec<f64> {
    m.transpose().iter().copied().collect()
}

fn signature_entries(j: &KreinSignature) -> Vec<f64> {
    j.diagonal_entries().unwrap_or_else(|| row_major(j.matrix()))
}

fn matrix(name: &str, data: &[f64], rows: usize, cols: usize) -> Result<DMatrix<f64>, CliError> {
    if data.len() != rows * cols {
        return Err(CliError::Dimension(format!(
            "\"{name}\" has {} entries, expected {rows}x{cols}",
            data.len()
        )));
    }
    Ok(DMatrix::from_row_slice(rows, cols, data))
}

fn vector(name: &str, data: &[f64], len: usize) -> Result<DVector<f64>, CliError> {
    if data.len() != len {
        return Err(CliError::Dimension(format!("\"{name}\" has length {}, expected {len}", data.len())));
    }
    Ok(DVector::from_row_slice(data))
}

fn signature(name: &str, data: &[f64], m: usize) -> Result<KreinSignature, CliError> {
    let err = |e: qp1qec::Error| CliError::Malformed(format!("\"{name}\": {e}"));
    if data.len() == m {
        KreinSignature::from_signs(data).map_err(err)
    } else if data.len() == m * m {
        KreinSignature::new(DMatrix::from_row_slice(m, m, data)).map_err(err)
    } else {
        Err(CliError::Dimension(format!(
            "\"{name}\" has {} entries, expected {m} or {}",
            data.len(),
            m * m
        )))
    }
}

/// A vector file: a bare array or an object with an `"x"` array.
pub fn parse_vector(text: &str) -> Result<Vec<f64>, CliError> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum VectorFile {
        Bare(Vec<f64>),
        Wrapped { x: Vec<f64> },
    }
    match serde_json::from_str(text).map_err(|e| CliError::Malformed(e.to_string()))? {
        VectorFile::Bare(v) | VectorFile::Wrapped { x: v } => Ok(v),
    }
}
