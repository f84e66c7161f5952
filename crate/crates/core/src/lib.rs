//! Indefinite least squares with one quadratic equality constraint.
//!
//! Minimizes `[Tx − w0, Tx − w0]_K` subject to `[Vx − z0, Vx − z0]_E = 0`,
//! where both brackets are indefinite inner products given by symmetric
//! invertible Gram matrices. The solver locates the interval of multipliers
//! `ρ` with `A + ρB` positive semidefinite (`A = T#T`, `B = V#V`), reduces the
//! pencil at its midpoint and solves a monotone secular equation.
//!
//! ```
//! use qp1qec::fixtures::example_problem;
//! use qp1qec::{solve, SolveStatus};
//!
//! let outcome = solve(&example_problem(&[5.0, 0.0, 1.0])).unwrap();
//! let SolveStatus::Solved(set) = &outcome.status else { panic!() };
//! assert!((set.lambda - 9.0 / 14.0).abs() < 1e-9);
//! ```

// Negated float comparisons are used so that NaN takes the failing branch.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
pub mod error;
pub mod fixtures;
pub mod generate;
pub mod linalg;
pub mod oracle;
pub mod pencil;
pub mod solver;
pub mod splines;
pub mod tolerance;

pub use error::{Error, Result, Side};
pub use linalg::KreinSignature;
pub use pencil::{psd_interval, reduce_pencil, GramPair, PsdInterval, ReducedPencil, SubspaceDims};
pub use solver::*;
pub use tolerance::ToleranceConfig;
