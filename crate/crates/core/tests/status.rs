mod common;

use common::*;
use qp1qec::oracle::{brute_min, SampleConfig};
use qp1qec::{
    existence_for_all_data, lagrangian_bound, solve, DegenerateOutcome, PsdInterval, SolveStatus, ToleranceConfig,
};

#[test]
fn empty_interval_is_unbounded() {
    let p = empty_interval_problem();
    let out = solve(&p).unwrap();
    assert!(matches!(out.diagnostics.interval, Some(PsdInterval::Empty { .. })));
    let SolveStatus::UnboundedBelow { certificate: y } = out.status else {
        panic!("{:?}", out.status)
    };
    let scale = p.scale();
    let yby = (y.transpose() * p.b() * &y)[(0, 0)];
    let yay = (y.transpose() * p.a() * &y)[(0, 0)];
    assert!(yby.abs() <= 1e-10 * scale);
    assert!(yay <= -ToleranceConfig::default().psd_tol * scale);
    // the objective really diverges along the certificate
    let x0 = qp1qec::base_point(&p.v, &p.z0, &p.tol).unwrap();
    let far = &x0 + &y * 1e4;
    assert!(p.objective(&far) < p.objective(&x0) - 1e6);
    assert!(p.constraint(&far).abs() <= 1e-6 * far.norm_squared());
}

#[test]
fn oracle_trend_on_empty_interval() {
    let p = empty_interval_problem();
    let mut last = f64::INFINITY;
    for max_scale in [1e1, 1e2, 1e3, 1e4] {
        let cfg = SampleConfig { count: 2000, max_scale, refine_iters: 0, ..Default::default() };
        let v = brute_min(&p, &cfg).unwrap().value;
        assert!(v < last);
        last = v;
    }
}

#[test]
fn point_interval_with_verified_point() {
    let p = point_solved_problem();
    let out = solve(&p).unwrap();
    let Some(PsdInterval::Point(r)) = out.diagnostics.interval else { panic!() };
    assert!((r + 1.0).abs() <= 1e-9);
    let SolveStatus::Degenerate(DegenerateOutcome::Solved(s)) = &out.status else {
        panic!("{:?}", out.status)
    };
    // every feasible point has objective [x − z0, x − z0] = 0, the bound at ρ = −1
    assert!(p.constraint(&s.particular).abs() <= 1e-9);
    assert!(s.min_value.abs() <= 1e-9);
    assert!((lagrangian_bound(&p, -1.0).unwrap() - s.min_value).abs() <= 1e-9);
    assert!(out.diagnostics.verification.as_ref().unwrap().pass);
}

#[test]
fn point_interval_without_verified_point() {
    let p = point_unattained_problem();
    let out = solve(&p).unwrap();
    assert!(matches!(out.diagnostics.interval, Some(PsdInterval::Point(_))), "{:?}", out.diagnostics);
    assert_eq!(out.status, SolveStatus::Degenerate(DegenerateOutcome::NoVerifiedSolution));
    // bound at the point multiplier, never beaten by feasible samples
    let bound = lagrangian_bound(&p, 0.0).unwrap();
    assert!(bound.abs() <= 1e-12);
    let best = brute_min(&p, &SampleConfig { count: 20_000, ..Default::default() }).unwrap();
    assert!(best.value >= bound - 1e-9);
    assert!(p.constraint(&best.point).abs() <= 1e-8 * (1.0 + best.point.norm_squared()));
}

#[test]
fn singular_midpoint_routes_to_fallback() {
    let p = singular_m_problem();
    let out = solve(&p).unwrap();
    assert!(matches!(out.status, SolveStatus::Degenerate(_)), "{:?}", out.status);
    let r = existence_for_all_data(&p).unwrap();
    assert!(r.proper_interval);
    assert!(!r.m_positive_definite);
    assert!(!r.verdict);
}

#[test]
fn existence_for_example() {
    let p = qp1qec::fixtures::example_problem(&[1.0, 1.0, 1.0]);
    let r = existence_for_all_data(&p).unwrap();
    assert!(r.verdict && r.proper_interval && r.m_positive_definite && r.n_plus_nontrivial && r.n_minus_nontrivial);
    assert_eq!(r.common_null_dim, 0);
    let r = existence_for_all_data(&empty_interval_problem()).unwrap();
    assert!(!r.verdict && !r.proper_interval);
}
