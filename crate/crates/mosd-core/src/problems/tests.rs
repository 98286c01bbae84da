use std::sync::Arc;

use super::*;
use crate::error::Error;

fn counterexample() -> Problem {
    Problem::builtin("paper-counterexample").unwrap()
}

/// Region shrunk toward its center so finite-difference stencils stay interior.
fn shrink(region: &Region) -> Region {
    match region {
        Region::Ball { center, radius } => Region::ball(center.clone(), radius * 0.9).unwrap(),
        Region::Box { lower, upper } => {
            let margin: Vec<f64> = lower
                .iter()
                .zip(upper)
                .map(|(l, u)| 0.05 * (u - l))
                .collect();
            Region::bounding_box(
                lower.iter().zip(&margin).map(|(l, d)| l + d).collect(),
                upper.iter().zip(&margin).map(|(u, d)| u - d).collect(),
            )
            .unwrap()
        }
    }
}

#[test]
fn evaluate_counterexample_points() {
    let p = counterexample();
    assert_eq!(p.evaluate(&[0.0, 0.0]).unwrap(), vec![0.0, 0.0]);
    assert_eq!(p.evaluate(&[1.0, 0.0]).unwrap(), vec![0.5, 1.0]);

    let s3 = 3.0f64.sqrt();
    let f = p.evaluate(&[0.75, s3 / 4.0]).unwrap();
    assert!((f[0] - 0.375).abs() < 1e-15);
    assert!((f[1] - 0.75).abs() < 1e-15);
}

#[test]
fn evaluate_rejects_bad_points() {
    let p = counterexample();
    assert!(matches!(p.evaluate(&[1.0]), Err(Error::InvalidInput(_))));
    assert!(matches!(
        p.evaluate(&[100.0, 0.0]),
        Err(Error::OutsideDomain(_))
    ));
}

#[test]
fn jacobian_counterexample_rows() {
    let p = counterexample();
    let s3 = 3.0f64.sqrt();

    let g = p.jacobian(&[0.3, -0.7]).unwrap();
    assert_eq!(g.row(0), &[0.3, -0.7]);
    assert_eq!(g.row(1), &[1.0, 0.0]);

    let g = p.jacobian(&[0.0, 0.0]).unwrap();
    assert_eq!(g.row(0), &[0.0, 0.0]);
    assert_eq!(g.row(1), &[1.0, 0.0]);

    let g = p.jacobian(&[1.0, s3 / 4.0]).unwrap();
    assert_eq!(g.row(0), &[1.0, s3 / 4.0]);
    assert_eq!(g.row(1), &[1.0, 0.0]);
}

#[test]
fn gradcheck_counterexample_is_tight() {
    let p = counterexample();
    let err = check_gradients(&p, &[0.3, -0.7], 1e-6).unwrap();
    assert!(err <= 1e-6, "relative error {err}");
}

#[test]
fn gradcheck_linear_objective_is_exact() {
    let p = Problem::builtin("opposed-pair").unwrap();
    let err = check_gradients(&p, &[0.4, -2.5], 1e-6).unwrap();
    assert!(err <= 1e-6, "relative error {err}");
}

#[test]
fn gradcheck_flags_wrong_gradient() {
    // counterexample f_1 with a +0.1 perturbation on the first gradient component
    let broken = Objective::Custom {
        eval: Arc::new(|x: &[f64]| 0.5 * (x[0] * x[0] + x[1] * x[1])),
        grad: Arc::new(|x: &[f64]| vec![x[0] + 0.1, x[1]]),
    };
    let p = Problem::custom(
        "broken-gradient",
        2,
        Region::ball(vec![0.0, 0.0], 8.0).unwrap(),
        vec![broken],
    )
    .unwrap();
    let err = check_gradients(&p, &[0.3, -0.7], 1e-6).unwrap();
    assert!(err > 1e-2, "relative error {err} should expose the bug");
}

#[test]
fn gradcheck_rejects_boundary_stencils() {
    let p = counterexample();
    // x on the domain boundary: x + h e_1 leaves the ball
    assert!(matches!(
        check_gradients(&p, &[8.0, 0.0], 1e-6),
        Err(Error::OutsideDomain(_))
    ));
    assert!(check_gradients(&p, &[0.0, 0.0], 0.0).is_err());
}

#[test]
fn registry_gradients_check_out_at_seeded_points() {
    for p in registry() {
        let region = shrink(p.domain());
        let mut rng = crate::rng::seeded_rng(2024);
        for _ in 0..100 {
            let x = region.sample(&mut rng);
            let err = check_gradients(&p, &x, 1e-6).unwrap();
            assert!(err <= 1e-5, "problem {} at {x:?}: error {err}", p.name());
        }
    }
}

#[test]
fn counterexample_matches_its_formulas_at_sampled_points() {
    let p = counterexample();
    let mut rng = crate::rng::seeded_rng(9);
    for _ in 0..200 {
        let x = p.domain().sample(&mut rng);
        let f = p.evaluate(&x).unwrap();
        assert_eq!(f[0], 0.5 * (x[0] * x[0] + x[1] * x[1]));
        assert_eq!(f[1], x[0]);
    }
}

#[test]
fn region_constants_counterexample_radius_two() {
    let p = counterexample();
    let region = Region::ball(vec![0.0, 0.0], 2.0).unwrap();
    let c = estimate_region_constants(&p, &region, 10000, 42).unwrap();
    assert!((c.l - 1.0).abs() <= 0.05, "L estimate {}", c.l);
    assert!((c.m - 2.0).abs() <= 0.05, "M estimate {}", c.m);
    assert_eq!(c.samples, 10000);
}

#[test]
fn region_constants_linear_objective() {
    let p = Problem::polynomial(
        "linear",
        2,
        Region::bounding_box(vec![-1.0, -1.0], vec![1.0, 1.0]).unwrap(),
        vec![Polynomial::new(vec![Term {
            coeff: 2.0,
            exponents: vec![1, 0],
        }])],
    )
    .unwrap();
    let region = Region::bounding_box(vec![-0.5, -0.5], vec![0.5, 0.5]).unwrap();
    let c = estimate_region_constants(&p, &region, 100, 7).unwrap();
    assert_eq!(c.l, 0.0);
    assert_eq!(c.m, 2.0); // |c| for the constant gradient (2, 0)
}

#[test]
fn region_constants_small_offset_ball() {
    let p = counterexample();
    let region = Region::ball(vec![1.0, 0.0], 0.1).unwrap();
    let c = estimate_region_constants(&p, &region, 10000, 42).unwrap();
    assert!((c.m - 1.1).abs() <= 0.01, "M estimate {}", c.m);
}

#[test]
fn region_constants_input_validation() {
    let p = counterexample();
    let region = Region::ball(vec![0.0, 0.0], 2.0).unwrap();
    assert!(matches!(
        estimate_region_constants(&p, &region, 1, 42),
        Err(Error::InvalidInput(_))
    ));
    let outside = Region::ball(vec![8.0, 0.0], 2.0).unwrap();
    assert!(estimate_region_constants(&p, &outside, 10, 42).is_err());
}

#[test]
fn region_constants_nested_seeds_are_monotone() {
    // maxima over a prefix of the same sample stream never decrease with k
    let p = counterexample();
    let region = Region::ball(vec![0.0, 0.0], 2.0).unwrap();
    for seed in [1u64, 99, 31415] {
        let small = estimate_region_constants(&p, &region, 50, seed).unwrap();
        let large = estimate_region_constants(&p, &region, 500, seed).unwrap();
        assert!(large.l >= small.l);
        assert!(large.m >= small.m);
    }
}

#[test]
fn analytic_constants_for_builtins() {
    let region = Region::ball(vec![0.0, 0.0], 2.0).unwrap();
    let c = counterexample().analytic_region_constants(&region).unwrap();
    assert_eq!((c.l, c.m, c.samples), (1.0, 2.0, 0));

    let q = Problem::builtin("scalar-quadratic").unwrap();
    let c = q.analytic_region_constants(&region).unwrap();
    assert_eq!((c.l, c.m), (1.0, 2.0));

    let o = Problem::builtin("opposed-pair").unwrap();
    let c = o.analytic_region_constants(&region).unwrap();
    assert_eq!((c.l, c.m), (0.0, 1.0));

    assert!(Problem::builtin("rosenbrock-pair")
        .unwrap()
        .analytic_region_constants(&region)
        .is_none());
}

#[test]
fn registry_descriptors_round_trip() {
    for p in registry() {
        let descriptor = p.descriptor().expect("built-ins are polynomial");
        let q = descriptor.into_problem().unwrap();
        let mut rng = crate::rng::seeded_rng(17);
        for _ in 0..10 {
            let x = p.domain().sample(&mut rng);
            assert_eq!(p.evaluate(&x).unwrap(), q.evaluate(&x).unwrap());
            assert_eq!(p.jacobian(&x).unwrap(), q.jacobian(&x).unwrap());
        }
    }
}
