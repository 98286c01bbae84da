//! The steepest descent direction and its optimal value.
//!
//! `L(x)` minimizes `max_i <grad f_i(x), v> + |v|^2 / 2`; the optimal value
//! `theta(x)` equals `-|L(x)|^2 / 2` and vanishes exactly at Pareto critical
//! points. `L` is always recovered from the dual minimum-norm point, never
//! from a direct primal solve: one solver, one set of tolerances.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::GradientMatrix;
use crate::minnorm::{self, SimplexWeights};
use crate::problems::Problem;
use crate::vecmath::{dot, norm, norm_sq};

/// Residuals of the KKT system of the primal subproblem at the returned
/// direction. All three are nonnegative and small on converged results.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct KktResiduals {
    /// `max_i <g_i, lambda> - theta`, clipped below at 0 (the descent
    /// inequality `<g_i, lambda> <= theta` holds with slack `|theta|`).
    pub feasibility: f64,
    /// `max_i alpha_i |<g_i, lambda> - 2 theta|`: dual complementary
    /// slackness. Active rows satisfy `<g_i, u> = |u|^2`, i.e. slope
    /// `2 theta`, so this vanishes at exact solutions.
    pub complementarity: f64,
    /// `|lambda + sum_i alpha_i g_i|`.
    pub stationarity: f64,
}

/// The full output of the steepest-descent subproblem at one point.
#[derive(Debug, Clone, Serialize)]
pub struct DirectionResult {
    /// The steepest descent direction.
    pub lambda: Vec<f64>,
    /// Optimal value of the subproblem, `-|lambda|^2 / 2`.
    pub theta: f64,
    /// Dual weights.
    pub weights: SimplexWeights,
    /// Per-objective slopes `<grad f_i(x), lambda>`.
    pub slopes: Vec<f64>,
    pub kkt: KktResiduals,
    /// Whether the dual solver certified optimality.
    pub converged: bool,
}

impl DirectionResult {
    pub fn lambda_norm(&self) -> f64 {
        norm(&self.lambda)
    }
}

/// Solves the subproblem from an explicit gradient matrix.
pub fn direction_from_gradients(g: &GradientMatrix, tol: f64) -> Result<DirectionResult> {
    let dual = minnorm::min_norm_point(g, tol)?;
    // `+ 0.0` keeps negated zero components as plain 0.0
    let lambda: Vec<f64> = dual.point.iter().map(|u| -u + 0.0).collect();
    let theta = -0.5 * dual.norm_sq;
    let slopes: Vec<f64> = g.rows().map(|row| dot(row, &lambda)).collect();

    let alpha = dual.weights.as_slice();
    let mut feasibility = 0.0f64;
    let mut complementarity = 0.0f64;
    for (s, a) in slopes.iter().zip(alpha) {
        feasibility = feasibility.max(s - theta);
        complementarity = complementarity.max(a * (s - 2.0 * theta).abs());
    }
    let residual: Vec<f64> = lambda
        .iter()
        .zip(g.combine(alpha))
        .map(|(l, c)| l + c)
        .collect();

    Ok(DirectionResult {
        lambda,
        theta,
        weights: dual.weights,
        slopes,
        kkt: KktResiduals {
            feasibility: feasibility.max(0.0),
            complementarity,
            stationarity: norm(&residual),
        },
        converged: dual.converged,
    })
}

/// The steepest descent direction of `problem` at `x`.
pub fn steepest_descent_direction(
    problem: &Problem,
    x: &[f64],
    tol: f64,
) -> Result<DirectionResult> {
    let g = problem.jacobian(x)?;
    if !g.is_finite() {
        return Err(Error::invalid(format!(
            "non-finite gradient for '{}' at {x:?}",
            problem.name()
        )));
    }
    direction_from_gradients(&g, tol)
}

/// `phi_x(v) = max_i <g_i, v>`.
pub fn phi(g: &GradientMatrix, v: &[f64]) -> Result<f64> {
    if v.len() != g.dim() {
        return Err(Error::invalid(format!(
            "vector has dimension {}, gradients have {}",
            v.len(),
            g.dim()
        )));
    }
    Ok(g.rows()
        .map(|row| dot(row, v))
        .fold(f64::NEG_INFINITY, f64::max))
}

/// The primal objective `phi_x(v) + |v|^2 / 2`; at `v = L(x)` this equals
/// `theta(x)` (strong duality).
pub fn primal_value(g: &GradientMatrix, v: &[f64]) -> Result<f64> {
    Ok(phi(g, v)? + 0.5 * norm_sq(v))
}

/// Pareto criticality test: `|lambda| <= eps`. The threshold is on the
/// direction norm, not on `theta`, which scales quadratically and
/// underflows earlier.
pub fn is_pareto_critical(result: &DirectionResult, eps: f64) -> bool {
    result.lambda_norm() <= eps
}

#[cfg(test)]
mod tests;
