use rand::Rng;

use super::*;
use crate::problems::{Polynomial, Problem, Region, Term};
use crate::rng;

const TOL: f64 = 1e-10;

fn counterexample() -> Problem {
    Problem::builtin("paper-counterexample").unwrap()
}

fn random_matrix(rng: &mut rand_chacha::ChaCha8Rng, m: usize, n: usize) -> GradientMatrix {
    GradientMatrix::from_rows(
        (0..m)
            .map(|_| (0..n).map(|_| rng.random_range(-2.0..2.0)).collect())
            .collect(),
    )
    .unwrap()
}

#[test]
fn direction_at_y_pi_over_six() {
    // L(y_t) = -grad f_1(y_t) = -y_t, theta = -|y_t|^2 / 2 = -3/8
    let s3 = 3.0f64.sqrt();
    let r = steepest_descent_direction(&counterexample(), &[0.75, s3 / 4.0], TOL).unwrap();
    assert!(r.converged);
    assert_eq!(r.lambda, vec![-0.75, -s3 / 4.0]);
    assert!((r.theta + 0.375).abs() < 1e-15);
}

#[test]
fn direction_at_z_pi_over_six() {
    // L(z_t) = -grad f_2 = -(1, 0), theta = -1/2
    let s3 = 3.0f64.sqrt();
    let r = steepest_descent_direction(&counterexample(), &[1.0, s3 / 4.0], TOL).unwrap();
    assert_eq!(r.lambda, vec![-1.0, 0.0]);
    assert_eq!(r.theta, -0.5);
}

#[test]
fn single_objective_reduces_to_negative_gradient() {
    let q = Problem::builtin("scalar-quadratic").unwrap();
    let r = steepest_descent_direction(&q, &[2.0, 0.0], TOL).unwrap();
    assert_eq!(r.lambda, vec![-2.0, 0.0]);
    assert_eq!(r.theta, -2.0);

    // exact reduction at random points
    let mut rng = rng::seeded_rng(4);
    for _ in 0..50 {
        let x = q.domain().sample(&mut rng);
        let r = steepest_descent_direction(&q, &x, TOL).unwrap();
        assert!((r.lambda[0] + x[0]).abs() <= 1e-12);
        assert!((r.lambda[1] + x[1]).abs() <= 1e-12);
    }
}

#[test]
fn opposed_pair_is_critical_everywhere() {
    let p = Problem::builtin("opposed-pair").unwrap();
    let mut rng = rng::seeded_rng(8);
    for _ in 0..20 {
        let x = p.domain().sample(&mut rng);
        let r = steepest_descent_direction(&p, &x, TOL).unwrap();
        assert_eq!(r.lambda, vec![0.0, 0.0]);
        assert_eq!(r.theta, 0.0);
        assert!(is_pareto_critical(&r, 1e-8));
    }
}

#[test]
fn criticality_on_the_counterexample_half_line() {
    let p = counterexample();
    // hull of {(1,0), (1,0)} is {(1,0)}: not critical
    let r = steepest_descent_direction(&p, &[1.0, 0.0], TOL).unwrap();
    assert!(!is_pareto_critical(&r, 1e-8));
    assert!((r.lambda_norm() - 1.0).abs() < 1e-12);

    // hull of {(-1,0), (1,0)} contains the origin: critical
    let r = steepest_descent_direction(&p, &[-1.0, 0.0], TOL).unwrap();
    assert!(is_pareto_critical(&r, 1e-8));
}

#[test]
fn phi_and_primal_value_examples() {
    let g = GradientMatrix::from_rows(vec![vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
    assert_eq!(phi(&g, &[1.0, 1.0]).unwrap(), 1.0);
    assert_eq!(phi(&g, &[-1.0, -1.0]).unwrap(), -1.0);
    assert_eq!(primal_value(&g, &[0.0, 0.0]).unwrap(), 0.0);
    assert_eq!(primal_value(&g, &[-0.5, -0.5]).unwrap(), -0.25);
    assert!(phi(&g, &[1.0]).is_err());

    // at y_{pi/6} both slopes equal -3/4 and the primal value matches theta
    let p = counterexample();
    let s3 = 3.0f64.sqrt();
    let x = [0.75, s3 / 4.0];
    let g = p.jacobian(&x).unwrap();
    let r = steepest_descent_direction(&p, &x, TOL).unwrap();
    assert!((phi(&g, &r.lambda).unwrap() + 0.75).abs() < 1e-12);
    assert!((primal_value(&g, &r.lambda).unwrap() + 0.375).abs() < 1e-12);
    for s in &r.slopes {
        assert!((s + 0.75).abs() < 1e-12);
    }
}

#[test]
fn kkt_residuals_and_identities_on_random_instances() {
    let mut rng = rng::seeded_rng(2718);
    for _ in 0..500 {
        let m = [1, 2, 3][rng.random_range(0..3)];
        let n = [2, 3, 5][rng.random_range(0..3)];
        let g = random_matrix(&mut rng, m, n);
        let r = direction_from_gradients(&g, TOL).unwrap();
        assert!(r.converged);

        // theta = -|lambda|^2 / 2
        let lsq = norm_sq(&r.lambda);
        assert!((r.theta + 0.5 * lsq).abs() <= 1e-9 * (1.0 + r.theta.abs()));
        assert!(r.theta <= 0.0);

        // KKT residuals at the stated tolerances
        assert!(r.kkt.stationarity <= 1e-9);
        assert!(r.kkt.feasibility <= 1e-8 * (1.0 + r.theta.abs()));
        assert!(r.kkt.complementarity <= 1e-8);

        // strong duality: primal value at lambda equals theta
        let pv = primal_value(&g, &r.lambda).unwrap();
        assert!((pv - r.theta).abs() <= 1e-8 * (1.0 + r.theta.abs()));

        // descent inequality at non-critical points
        if !is_pareto_critical(&r, 1e-8) {
            for s in &r.slopes {
                assert!(*s <= -0.5 * lsq + 1e-8);
            }
        }
    }
}

#[test]
fn primal_optimality_under_perturbation() {
    // 1-strong convexity: value(lambda + d) >= theta + |d|^2 / 2 - tolerance
    let mut rng = rng::seeded_rng(99);
    for _ in 0..20 {
        let m = [2, 3][rng.random_range(0..2)];
        let g = random_matrix(&mut rng, m, 3);
        let r = direction_from_gradients(&g, TOL).unwrap();
        for _ in 0..100 {
            let scale = rng.random_range(0.0..0.1);
            let d: Vec<f64> = (0..3).map(|_| rng.random_range(-1.0..1.0)).collect();
            let dn = norm(&d).max(1e-300);
            let d: Vec<f64> = d.iter().map(|di| di * scale / dn).collect();
            let shifted: Vec<f64> = r.lambda.iter().zip(&d).map(|(l, di)| l + di).collect();
            let pv = primal_value(&g, &shifted).unwrap();
            assert!(pv >= r.theta - 1e-10);
            assert!(pv >= r.theta + 0.5 * norm_sq(&d) - 1e-6);
        }
    }
}

#[test]
fn directions_ignore_constant_objective_shifts() {
    // adding a constant to every objective leaves gradients, hence the
    // direction, unchanged
    let base = Polynomial::new(vec![
        Term {
            coeff: 0.5,
            exponents: vec![2, 0],
        },
        Term {
            coeff: 0.5,
            exponents: vec![0, 2],
        },
    ]);
    let mut shifted = base.clone();
    shifted.terms.push(Term {
        coeff: 17.0,
        exponents: vec![0, 0],
    });
    let linear = Polynomial::new(vec![Term {
        coeff: 1.0,
        exponents: vec![1, 0],
    }]);
    let mut linear_shifted = linear.clone();
    linear_shifted.terms.push(Term {
        coeff: -4.0,
        exponents: vec![0, 0],
    });

    let domain = Region::ball(vec![0.0, 0.0], 8.0).unwrap();
    let p = Problem::polynomial("base", 2, domain.clone(), vec![base, linear]).unwrap();
    let q = Problem::polynomial("shifted", 2, domain, vec![shifted, linear_shifted]).unwrap();

    let mut rng = rng::seeded_rng(6);
    for _ in 0..50 {
        let x = p.domain().sample(&mut rng);
        let a = steepest_descent_direction(&p, &x, TOL).unwrap();
        let b = steepest_descent_direction(&q, &x, TOL).unwrap();
        assert_eq!(a.lambda, b.lambda);
        assert_eq!(a.theta, b.theta);
    }
}

#[test]
fn non_finite_gradients_are_a_hard_error() {
    use std::sync::Arc;
    let bad = crate::problems::Objective::Custom {
        eval: Arc::new(|_: &[f64]| 0.0),
        grad: Arc::new(|_: &[f64]| vec![f64::NAN, 0.0]),
    };
    let p = Problem::custom(
        "nan-grad",
        2,
        Region::ball(vec![0.0, 0.0], 1.0).unwrap(),
        vec![bad],
    )
    .unwrap();
    assert!(steepest_descent_direction(&p, &[0.0, 0.0], TOL).is_err());
}
