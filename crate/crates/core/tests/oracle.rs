mod common;

use common::*;
use nalgebra::DVector;
use qp1qec::fixtures::example_problem;
use qp1qec::oracle::{brute_min, lambda_sweep, SampleConfig};
use qp1qec::{solve, Problem, SolveStatus};

#[test]
fn brute_min_is_monotone_in_budget() {
    for seed in 0..12 {
        let p = random_instance(300 + seed);
        let mut last = f64::INFINITY;
        for count in [250, 500, 1000, 2000, 4000] {
            let v = brute_min(&p, &SampleConfig { seed, count, refine_iters: 10, ..Default::default() }).unwrap().value;
            assert!(v <= last, "seed {seed}: {v} > {last} at count {count}");
            last = v;
        }
    }
}

#[test]
fn brute_min_never_beats_the_solver() {
    for seed in 0..20 {
        let p = random_instance(500 + seed);
        let SolveStatus::Solved(s) = solve(&p).unwrap().status else { panic!() };
        let v = brute_min(&p, &SampleConfig { seed, count: 5000, ..Default::default() }).unwrap();
        assert!(v.value >= s.min_value - 1e-6 * p.scale(), "seed {seed}");
        assert!(p.constraint(&v.point).abs() <= 1e-8 * (1.0 + v.point.norm_squared()));
    }
}

#[test]
fn consistent_data_has_zero_minimum() {
    let p = random_instance(42);
    let x0 = DVector::from_fn(p.dim(), |i, _| (i as f64 + 1.0).sin());
    let q = Problem::new(p.t.clone(), p.jk.clone(), p.v.clone(), p.je.clone(), &p.t * &x0, &p.v * &x0, p.tol).unwrap();
    let best = brute_min(&q, &SampleConfig { count: 2000, ..Default::default() }).unwrap();
    assert!(best.value <= 1e-12 && best.value >= -1e-9, "{}", best.value);
}

fn sign_changes(p: &Problem, grid: usize) -> Vec<(f64, f64)> {
    let sweep = lambda_sweep(p, grid).unwrap();
    sweep
        .windows(2)
        .filter(|w| w[0].constraint.signum() != w[1].constraint.signum())
        .map(|w| (w[0].lambda, w[1].lambda))
        .collect()
}

#[test]
fn sweep_brackets_the_interior_multiplier() {
    let p = example_problem(&[1.0, 1.0, 1.0]);
    let SolveStatus::Solved(s) = solve(&p).unwrap().status else { panic!() };
    // the endpoints are singular, so only interior cells are meaningful
    let cells: Vec<_> = sign_changes(&p, 1001).into_iter().filter(|(a, b)| *a > 0.5 + 1e-6 && *b < 1.0 - 1e-6).collect();
    assert_eq!(cells.len(), 1, "{cells:?}");
    assert!(cells[0].0 <= s.lambda && s.lambda <= cells[0].1);

    let p = example_problem(&[5.0, 0.0, 1.0]);
    let cells: Vec<_> = sign_changes(&p, 1001).into_iter().filter(|(a, b)| *a > 0.5 + 1e-6 && *b < 1.0 - 1e-6).collect();
    assert_eq!(cells.len(), 1);
    let target = 9.0 / 14.0;
    let cell = 0.5 / 1000.0;
    assert!(cells[0].0 - cell <= target && target <= cells[0].1 + cell);
}

#[test]
fn sweep_rejects_empty_interval() {
    assert!(lambda_sweep(&empty_interval_problem(), 10).is_err());
}
