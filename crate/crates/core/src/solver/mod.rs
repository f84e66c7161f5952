//! Problem setup, secular solve, solution assembly and verification.

pub mod problem;
pub mod secular;
pub mod solution;
pub mod solve;

pub use problem::{base_point, deflate, DeflatedProblem, Problem};
pub use secular::{reduced_rhs, secular_eval, secular_solve, NoTheta, ReducedRhs, ThetaSet};
pub use solution::{assemble_solution, verify_solution, Ellipsoid, SolutionSet, VerificationReport};
pub use solve::{
    existence_for_all_data, find_quadratic_root, lagrangian_bound, solve, solve_degenerate, DegenerateOutcome, Diagnostics,
    ExistenceReport, SolveOutcome, SolveStatus,
};
