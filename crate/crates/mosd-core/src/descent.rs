//! Multiobjective steepest descent with Armijo backtracking.
//!
//! Every accepted step decreases every objective: the Armijo test is applied
//! per objective with the per-objective slope `<grad f_i(x), L>`, which the
//! descent inequality bounds by `-|L|^2 / 2 < 0` away from critical points.

use serde::Serialize;

use crate::direction::{self, DirectionResult};
use crate::error::{Error, Result};
use crate::problems::Problem;
use crate::vecmath::add_scaled;

/// Line-search and termination parameters.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DescentParams {
    /// Armijo slope fraction, in (0, 1).
    pub sigma: f64,
    /// Backtracking factor, in (0, 1).
    pub beta: f64,
    /// Initial trial step.
    pub t0: f64,
    pub max_iters: usize,
    /// Criticality threshold on `|L|`.
    pub eps_crit: f64,
    /// Trial steps per line search; 60 halvings exhaust double precision.
    pub max_backtracks: usize,
    /// Dual solver tolerance.
    pub tol: f64,
}

impl Default for DescentParams {
    fn default() -> Self {
        DescentParams {
            sigma: 1e-4,
            beta: 0.5,
            t0: 1.0,
            max_iters: 10_000,
            eps_crit: 1e-6,
            max_backtracks: 60,
            tol: crate::minnorm::DEFAULT_TOL,
        }
    }
}

impl DescentParams {
    pub fn validate(&self) -> Result<()> {
        let ok = self.sigma > 0.0
            && self.sigma < 1.0
            && self.beta > 0.0
            && self.beta < 1.0
            && self.t0 > 0.0
            && self.t0.is_finite()
            && self.eps_crit > 0.0;
        if !ok {
            return Err(Error::invalid(
                "need sigma, beta in (0,1), t0 > 0, eps_crit > 0",
            ));
        }
        Ok(())
    }
}

/// How a descent run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DescentStatus {
    ReachedCritical,
    MaxIters,
    LinesearchFailed,
    LeftDomain,
}

/// One visited point: position, objective values, criticality measures, and
/// the step taken from here (0 on the final record).
#[derive(Debug, Clone, Serialize)]
pub struct IterateRecord {
    pub x: Vec<f64>,
    pub f: Vec<f64>,
    pub lambda_norm: f64,
    pub theta: f64,
    pub step: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct DescentTrace {
    pub iterates: Vec<IterateRecord>,
    pub status: DescentStatus,
}

impl DescentTrace {
    pub fn final_x(&self) -> &[f64] {
        &self.iterates.last().expect("trace is never empty").x
    }

    /// CSV with columns `iter, x_1..x_n, f_1..f_m, lambda_norm, theta, step`.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let (n, m) = match self.iterates.first() {
            Some(r) => (r.x.len(), r.f.len()),
            None => (0, 0),
        };
        out.push_str("iter");
        for j in 1..=n {
            out.push_str(&format!(",x_{j}"));
        }
        for i in 1..=m {
            out.push_str(&format!(",f_{i}"));
        }
        out.push_str(",lambda_norm,theta,step\n");
        for (k, rec) in self.iterates.iter().enumerate() {
            out.push_str(&k.to_string());
            for v in rec.x.iter().chain(&rec.f) {
                out.push_str(&format!(",{v}"));
            }
            out.push_str(&format!(
                ",{},{},{}\n",
                rec.lambda_norm, rec.theta, rec.step
            ));
        }
        out
    }
}

/// Largest `t` in `{t0 beta^k}` with `x + t L` inside the domain and
/// Armijo-acceptable for every objective:
/// `f_i(x + t L) <= f_i(x) + sigma t <grad f_i(x), L>`.
pub fn armijo_step(
    problem: &Problem,
    x: &[f64],
    result: &DirectionResult,
    params: &DescentParams,
) -> Result<f64> {
    params.validate()?;
    if direction::is_pareto_critical(result, params.eps_crit) {
        return Err(Error::invalid(
            "line search requires a non-critical direction",
        ));
    }
    let fx = problem.evaluate(x)?;
    let mut t = params.t0;
    for _ in 0..=params.max_backtracks {
        let candidate = add_scaled(x, t, &result.lambda);
        // a trial too small to move the iterate in f64 is not admissible
        // (its "decrease" would be pure round-off)
        if problem.domain().contains(&candidate) && candidate != x {
            let fc = problem.evaluate(&candidate)?;
            let accepted = fc
                .iter()
                .zip(&fx)
                .zip(&result.slopes)
                .all(|((fi_new, fi), slope)| *fi_new <= fi + params.sigma * t * slope);
            if accepted {
                return Ok(t);
            }
        }
        t *= params.beta;
    }
    Err(Error::LinesearchFailed {
        backtracks: params.max_backtracks,
    })
}

/// Runs `x_{k+1} = x_k + t_k L(x_k)` until criticality, iteration budget,
/// line-search failure, or domain exit.
pub fn run_descent(problem: &Problem, x0: &[f64], params: &DescentParams) -> Result<DescentTrace> {
    params.validate()?;
    problem.evaluate(x0)?; // validates dimension and domain membership

    let mut x = x0.to_vec();
    let mut iterates = Vec::new();
    let mut status = DescentStatus::MaxIters;

    for _ in 0..params.max_iters {
        let result = direction::steepest_descent_direction(problem, &x, params.tol)?;
        if !result.converged {
            return Err(Error::NotConverged(format!("dual solver failed at {x:?}")));
        }
        let f = problem.evaluate(&x)?;
        if direction::is_pareto_critical(&result, params.eps_crit) {
            iterates.push(record(&x, f, &result, 0.0));
            status = DescentStatus::ReachedCritical;
            return Ok(DescentTrace { iterates, status });
        }
        match armijo_step(problem, &x, &result, params) {
            Ok(t) => {
                iterates.push(record(&x, f, &result, t));
                x = add_scaled(&x, t, &result.lambda);
            }
            Err(Error::LinesearchFailed { .. }) => {
                iterates.push(record(&x, f, &result, 0.0));
                // the boundary was the obstruction if any trial step
                // left the domain; otherwise the decrease test failed
                let mut t = params.t0;
                let mut hit_boundary = false;
                for _ in 0..=params.max_backtracks {
                    if !problem
                        .domain()
                        .contains(&add_scaled(&x, t, &result.lambda))
                    {
                        hit_boundary = true;
                        break;
                    }
                    t *= params.beta;
                }
                status = if hit_boundary {
                    DescentStatus::LeftDomain
                } else {
                    DescentStatus::LinesearchFailed
                };
                return Ok(DescentTrace { iterates, status });
            }
            Err(e) => return Err(e),
        }
    }

    // budget exhausted: record the final point
    let result = direction::steepest_descent_direction(problem, &x, params.tol)?;
    let f = problem.evaluate(&x)?;
    if direction::is_pareto_critical(&result, params.eps_crit) {
        status = DescentStatus::ReachedCritical;
    }
    iterates.push(record(&x, f, &result, 0.0));
    Ok(DescentTrace { iterates, status })
}

fn record(x: &[f64], f: Vec<f64>, result: &DirectionResult, step: f64) -> IterateRecord {
    IterateRecord {
        x: x.to_vec(),
        f,
        lambda_norm: result.lambda_norm(),
        theta: result.theta,
        step,
    }
}

#[cfg(test)]
mod tests;
