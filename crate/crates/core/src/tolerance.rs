//! Numerical tolerance policy shared by every module.

use crate::error::{Error, Result};

/// Tolerances used for rank decisions, PSD tests, root finding and
/// solution verification.
///
/// All rank decisions go through the single relative singular-value cutoff
/// `rank_tol`. Residuals are compared against `residual_tol` after division
/// by the problem scale `1 + ‖A‖_F + ‖B‖_F + ‖w0‖ + ‖z0‖`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceConfig {
    /// Relative singular-value cutoff.
    pub rank_tol: f64,
    /// Slack allowed below zero for an eigenvalue to still count as nonnegative.
    pub psd_tol: f64,
    /// Target width of bisection brackets.
    pub root_tol: f64,
    /// Slack for scaled verification residuals.
    pub residual_tol: f64,
    /// Iteration cap for bisection, golden-section and refinement loops.
    pub max_iter: usize,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            rank_tol: 1e-10,
            psd_tol: 1e-9,
            root_tol: 1e-12,
            residual_tol: 1e-8,
            max_iter: 500,
        }
    }
}

impl ToleranceConfig {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("rank_tol", self.rank_tol),
            ("psd_tol", self.psd_tol),
            ("root_tol", self.root_tol),
            ("residual_tol", self.residual_tol),
        ];
        for (name, value) in fields {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidTolerance(format!("{name} must be positive, got {value}")));
            }
        }
        if self.root_tol < f64::EPSILON {
            return Err(Error::InvalidTolerance(format!(
                "root_tol {} is below machine epsilon",
                self.root_tol
            )));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidTolerance("max_iter must be at least 1".into()));
        }
        Ok(())
    }

    pub fn with_residual_tol(mut self, residual_tol: f64) -> Self {
        self.residual_tol = residual_tol;
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_is_valid() {
        ToleranceConfig::default().validate().unwrap();
    }

    #[test]
    fn rejects_nonpositive_and_subepsilon() {
        for t in [
            ToleranceConfig { psd_tol: 0.0, ..Default::default() },
            ToleranceConfig { root_tol: 1e-20, ..Default::default() },
            ToleranceConfig { max_iter: 0, ..Default::default() },
        ] {
            assert!(t.validate().is_err());
        }
    }
}
