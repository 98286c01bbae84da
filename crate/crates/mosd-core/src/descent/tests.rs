use super::*;
use crate::direction::steepest_descent_direction;
use crate::problems::Problem;
use crate::vecmath::norm;

fn counterexample() -> Problem {
    Problem::builtin("paper-counterexample").unwrap()
}

fn quadratic() -> Problem {
    Problem::builtin("scalar-quadratic").unwrap()
}

#[test]
fn full_step_accepted_on_the_quadratic() {
    let p = quadratic();
    let params = DescentParams::default();
    let r = steepest_descent_direction(&p, &[1.0, 0.0], params.tol).unwrap();
    assert_eq!(r.lambda, vec![-1.0, 0.0]);
    let t = armijo_step(&p, &[1.0, 0.0], &r, &params).unwrap();
    assert_eq!(t, 1.0); // f(0) = 0 <= 1/2 - sigma
}

#[test]
fn full_step_accepted_on_the_counterexample_at_one_zero() {
    let p = counterexample();
    let params = DescentParams::default();
    let r = steepest_descent_direction(&p, &[1.0, 0.0], params.tol).unwrap();
    assert_eq!(r.lambda, vec![-1.0, 0.0]);
    let t = armijo_step(&p, &[1.0, 0.0], &r, &params).unwrap();
    assert_eq!(t, 1.0); // both objectives vanish at the origin
}

#[test]
fn greedy_sigma_forces_backtracking() {
    // with sigma near 1 the full step on the strictly convex quadratic is
    // rejected and the returned step is shorter
    let p = quadratic();
    let params = DescentParams {
        sigma: 0.999,
        ..DescentParams::default()
    };
    let r = steepest_descent_direction(&p, &[1.0, 0.0], params.tol).unwrap();
    let t = armijo_step(&p, &[1.0, 0.0], &r, &params).unwrap();
    assert!(t < params.t0, "step {t} should backtrack");
}

#[test]
fn armijo_rejects_critical_directions() {
    let p = Problem::builtin("opposed-pair").unwrap();
    let params = DescentParams::default();
    let r = steepest_descent_direction(&p, &[1.0, 1.0], params.tol).unwrap();
    assert!(armijo_step(&p, &[1.0, 1.0], &r, &params).is_err());
}

#[test]
fn quadratic_descends_to_the_origin() {
    let trace = run_descent(&quadratic(), &[4.0, 3.0], &DescentParams::default()).unwrap();
    assert_eq!(trace.status, DescentStatus::ReachedCritical);
    assert!(norm(trace.final_x()) <= 1e-5, "final {:?}", trace.final_x());
}

#[test]
fn counterexample_descends_to_the_critical_half_line() {
    let params = DescentParams::default();
    let trace = run_descent(&counterexample(), &[1.0, 1.0], &params).unwrap();
    assert_eq!(trace.status, DescentStatus::ReachedCritical);
    let x = trace.final_x();
    assert!(x[1].abs() <= 1e-3, "final s = {}", x[1]);
    assert!(x[0] <= 1e-3, "final r = {}", x[0]);
    let last = trace.iterates.last().unwrap();
    assert!(last.lambda_norm <= params.eps_crit);
}

#[test]
fn critical_start_terminates_immediately() {
    let p = Problem::builtin("opposed-pair").unwrap();
    let trace = run_descent(&p, &[2.0, -3.0], &DescentParams::default()).unwrap();
    assert_eq!(trace.status, DescentStatus::ReachedCritical);
    assert_eq!(trace.iterates.len(), 1);
    assert_eq!(trace.iterates[0].step, 0.0);
}

#[test]
fn every_objective_strictly_decreases_along_traces() {
    for (problem, x0) in [
        (counterexample(), vec![1.0, 1.0]),
        (quadratic(), vec![4.0, 3.0]),
        (Problem::builtin("rosenbrock-pair").unwrap(), vec![0.2, 1.5]),
    ] {
        let params = DescentParams::default();
        let trace = run_descent(&problem, &x0, &params).unwrap();
        for pair in trace.iterates.windows(2) {
            let rec = &pair[0];
            // Armijo guarantees a decrease of at least sigma * t * |slope|
            // >= sigma * t * |theta|; when that predicted decrease sits
            // below one ulp of f the strict comparison is unobservable
            let predicted = params.sigma * rec.step * rec.theta.abs();
            for (a, b) in rec.f.iter().zip(&pair[1].f) {
                assert!(b <= a, "objective increased on {}", problem.name());
                let ulp_cap = 4.0 * f64::EPSILON * a.abs().max(1.0);
                if rec.step > 0.0 && rec.lambda_norm > params.eps_crit && predicted > ulp_cap {
                    assert!(b < a, "accepted step failed to strictly decrease");
                }
            }
        }
        // steps are positive on every non-final record
        for rec in &trace.iterates[..trace.iterates.len() - 1] {
            assert!(rec.step > 0.0);
        }
    }
}

#[test]
fn traces_are_deterministic() {
    let a = run_descent(&counterexample(), &[1.0, 1.0], &DescentParams::default()).unwrap();
    let b = run_descent(&counterexample(), &[1.0, 1.0], &DescentParams::default()).unwrap();
    assert_eq!(a.iterates.len(), b.iterates.len());
    for (ra, rb) in a.iterates.iter().zip(&b.iterates) {
        assert_eq!(ra.x, rb.x);
        assert_eq!(ra.f, rb.f);
        assert_eq!(ra.step, rb.step);
    }
}

#[test]
fn descent_into_the_boundary_reports_left_domain() {
    // a single linear objective marches straight to the box boundary and
    // then every trial step exits
    use crate::problems::{Polynomial, Region, Term};
    let p = Problem::polynomial(
        "linear-march",
        2,
        Region::bounding_box(vec![-1.0, -1.0], vec![1.0, 1.0]).unwrap(),
        vec![Polynomial::new(vec![Term {
            coeff: 1.0,
            exponents: vec![1, 0],
        }])],
    )
    .unwrap();
    let trace = run_descent(&p, &[-0.5, 0.0], &DescentParams::default()).unwrap();
    assert_eq!(trace.status, DescentStatus::LeftDomain);
    assert_eq!(trace.final_x(), &[-1.0, 0.0]);
    // the objective still decreased on the way
    assert!(trace.iterates.last().unwrap().f[0] < trace.iterates[0].f[0]);
}

#[test]
fn interior_armijo_failure_reports_linesearch_failed() {
    // with no backtracks allowed and a greedy sigma, the full step inside
    // the domain fails the decrease test
    let params = DescentParams {
        sigma: 0.999,
        max_backtracks: 0,
        ..DescentParams::default()
    };
    let trace = run_descent(&quadratic(), &[1.0, 0.0], &params).unwrap();
    assert_eq!(trace.status, DescentStatus::LinesearchFailed);
}

#[test]
fn max_iters_status_when_budget_is_tiny() {
    // t0 = 0.3 contracts the quadratic by 0.7 per step, so two iterations
    // cannot reach criticality (t0 = 1 would jump straight to the origin)
    let params = DescentParams {
        max_iters: 2,
        t0: 0.3,
        ..DescentParams::default()
    };
    let trace = run_descent(&quadratic(), &[4.0, 3.0], &params).unwrap();
    assert_eq!(trace.status, DescentStatus::MaxIters);
    assert_eq!(trace.iterates.len(), 3); // 2 steps + final record
}

#[test]
fn param_validation() {
    let bad = DescentParams {
        sigma: 1.5,
        ..DescentParams::default()
    };
    assert!(run_descent(&quadratic(), &[1.0, 0.0], &bad).is_err());
    assert!(run_descent(&quadratic(), &[100.0, 0.0], &DescentParams::default()).is_err());
}

#[test]
fn csv_has_documented_columns() {
    let trace = run_descent(&counterexample(), &[1.0, 1.0], &DescentParams::default()).unwrap();
    let csv = trace.to_csv();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "iter,x_1,x_2,f_1,f_2,lambda_norm,theta,step"
    );
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(first.len(), 8);
    assert_eq!(first[0], "0");
    // full round-trip precision
    assert_eq!(first[1].parse::<f64>().unwrap(), 1.0);
    let rows = csv.lines().count() - 1;
    assert_eq!(rows, trace.iterates.len());
}
