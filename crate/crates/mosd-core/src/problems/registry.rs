//! Built-in problems.

use super::{AnalyticConstants, Polynomial, Problem, Region, Term};

fn term(coeff: f64, exponents: &[u32]) -> Term {
    Term {
        coeff,
        exponents: exponents.to_vec(),
    }
}

/// The two-objective family on which the steepest descent direction is not
/// Lipschitz: `f_1(r, s) = (r^2 + s^2) / 2`, `f_2(r, s) = r`. Its Pareto
/// critical set is the half-line `{(r, 0) : r <= 0}`.
fn paper_counterexample() -> Problem {
    let f1 = Polynomial::new(vec![term(0.5, &[2, 0]), term(0.5, &[0, 2])]);
    let f2 = Polynomial::new(vec![term(1.0, &[1, 0])]);
    Problem::polynomial(
        "paper-counterexample",
        2,
        Region::ball(vec![0.0, 0.0], 8.0).unwrap(),
        vec![f1, f2],
    )
    .unwrap()
    // grad f_1 is the identity map (Lipschitz constant exactly 1, norm |x|);
    // grad f_2 is the constant (1, 0).
    .with_analytic(AnalyticConstants::NormBased {
        l: 1.0,
        m_floor: 1.0,
    })
}

/// Single objective `f(x) = |x|^2 / 2`; the direction reduces to `-x`.
fn scalar_quadratic() -> Problem {
    let f = Polynomial::new(vec![term(0.5, &[2, 0]), term(0.5, &[0, 2])]);
    Problem::polynomial(
        "scalar-quadratic",
        2,
        Region::ball(vec![0.0, 0.0], 8.0).unwrap(),
        vec![f],
    )
    .unwrap()
    .with_analytic(AnalyticConstants::NormBased {
        l: 1.0,
        m_floor: 0.0,
    })
}

/// `f_1 = <c, x>`, `f_2 = -<c, x>` with `c = (1, 0)`: the gradient hull
/// contains the origin everywhere, so every point is Pareto critical.
fn opposed_pair() -> Problem {
    let f1 = Polynomial::new(vec![term(1.0, &[1, 0])]);
    let f2 = Polynomial::new(vec![term(-1.0, &[1, 0])]);
    Problem::polynomial(
        "opposed-pair",
        2,
        Region::bounding_box(vec![-8.0, -8.0], vec![8.0, 8.0]).unwrap(),
        vec![f1, f2],
    )
    .unwrap()
    .with_analytic(AnalyticConstants::Fixed { l: 0.0, m: 1.0 })
}

/// Two mirrored Rosenbrock valleys, `(1 -+ r)^2 + 100 (s -+ r^2)^2`, as a
/// nontrivial smooth nonconvex descent target.
fn rosenbrock_pair() -> Problem {
    // (1 - r)^2 + 100 (s - r^2)^2, expanded term by term
    let f1 = Polynomial::new(vec![
        term(1.0, &[0, 0]),
        term(-2.0, &[1, 0]),
        term(1.0, &[2, 0]),
        term(100.0, &[0, 2]),
        term(-200.0, &[2, 1]),
        term(100.0, &[4, 0]),
    ]);
    // (1 + r)^2 + 100 (s + r^2)^2
    let f2 = Polynomial::new(vec![
        term(1.0, &[0, 0]),
        term(2.0, &[1, 0]),
        term(1.0, &[2, 0]),
        term(100.0, &[0, 2]),
        term(200.0, &[2, 1]),
        term(100.0, &[4, 0]),
    ]);
    Problem::polynomial(
        "rosenbrock-pair",
        2,
        Region::bounding_box(vec![-2.0, -2.0], vec![2.0, 2.0]).unwrap(),
        vec![f1, f2],
    )
    .unwrap()
}

/// All built-in problems, in stable order.
pub fn registry() -> Vec<Problem> {
    vec![
        paper_counterexample(),
        scalar_quadratic(),
        opposed_pair(),
        rosenbrock_pair(),
    ]
}

/// Names of the built-in problems.
pub fn registry_names() -> Vec<String> {
    registry().iter().map(|p| p.name().to_string()).collect()
}

/// Looks up a built-in problem by name.
pub fn by_name(name: &str) -> Option<Problem> {
    registry().into_iter().find(|p| p.name() == name)
}

impl Problem {
    /// Convenience lookup into the built-in registry.
    pub fn builtin(name: &str) -> Option<Problem> {
        by_name(name)
    }
}
