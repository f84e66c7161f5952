use nalgebra::DMatrix;
use proptest::prelude::*;
use qp1qec::generate::{planted_problem, GeneratorConfig};
use qp1qec::{psd_interval, solve, verify_solution, GramPair, PsdInterval, SolveStatus, ToleranceConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_pair(n: usize, seed: u64) -> GramPair {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sym = || {
        let m = DMatrix::from_fn(n, n, |_, _| rng.random_range(-1.0..1.0));
        (&m + m.transpose()) * 0.5
    };
    let mut a = sym();
    let mut b = sym();
    // make B indefinite and push A towards positive so that all three
    // interval kinds show up
    b[(0, 0)] = 3.0;
    b[(n - 1, n - 1)] = -3.0;
    a += DMatrix::identity(n, n) * (seed % 4) as f64;
    GramPair::new(a, b, &ToleranceConfig::default()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn interval_is_correct(n in 2usize..=8, seed in any::<u64>()) {
        let tol = ToleranceConfig::default();
        let pair = random_pair(n, seed);
        let scale = pair.scale();
        match psd_interval(&pair, &tol).unwrap() {
            PsdInterval::Interval { lower, upper } => {
                for k in 1..=20 {
                    let rho = lower + (upper - lower) * k as f64 / 21.0;
                    prop_assert!(pair.lambda_min(rho) >= -tol.psd_tol * scale);
                }
                let out = 10.0 * tol.root_tol * lower.abs().max(upper.abs()).max(1.0) + 1e-7 * (upper - lower);
                prop_assert!(pair.lambda_min(lower - out) < 0.0);
                prop_assert!(pair.lambda_min(upper + out) < 0.0);
            }
            PsdInterval::Point(r) => {
                prop_assert!(pair.lambda_min(r) >= -tol.psd_tol * scale);
            }
            PsdInterval::Empty { rho_star, max_lambda_min } => {
                prop_assert!(max_lambda_min < -tol.psd_tol * scale);
                for d in [-10.0, -1.0, -0.1, 0.1, 1.0, 10.0] {
                    prop_assert!(pair.lambda_min(rho_star + d) <= max_lambda_min + 1e-9 * scale);
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn solved_points_verify(n in 2usize..=8, seed in any::<u64>()) {
        let p = planted_problem(&GeneratorConfig::new(n), seed).unwrap();
        let out = solve(&p).unwrap();
        let SolveStatus::Solved(s) = &out.status else {
            return Err(TestCaseError::fail(format!("{:?}", out.status)));
        };
        for x in s.sample_members(4) {
            let r = verify_solution(&p, &x, s.lambda);
            prop_assert!(r.pass, "{:?}", r);
        }
    }

    #[test]
    fn data_scaling_keeps_the_multiplier(n in 2usize..=6, seed in any::<u64>(), c in 0.1f64..10.0) {
        // scaling w0 and z0 together scales x̃ and leaves λ unchanged
        let p = planted_problem(&GeneratorConfig::new(n), seed).unwrap();
        let q = p.with_data(&p.w0 * c, &p.z0 * c).unwrap();
        let (SolveStatus::Solved(a), SolveStatus::Solved(b)) = (solve(&p).unwrap().status, solve(&q).unwrap().status) else {
            return Err(TestCaseError::fail("not solved"));
        };
        prop_assert!((a.lambda - b.lambda).abs() <= 1e-7 * (1.0 + a.lambda.abs()));
        prop_assert!((&a.particular * c - &b.particular).norm() <= 1e-6 * c * (1.0 + a.particular.norm()));
    }
}
