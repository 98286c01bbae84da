//! wasm-bindgen bindings for the browser demo.
//!
//! Every function returns a JSON string (`{"error": "..."}` on failure) or
//! a flat `Float64Array`, so the page needs no generated TypeScript and no
//! framework. Build with
//! `wasm-pack build crates/mosd-wasm --target web --out-dir ../../www/pkg`.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use mosd_core::continuity;
use mosd_core::descent::{run_descent, DescentParams};
use mosd_core::direction::{is_pareto_critical, steepest_descent_direction};
use mosd_core::problems::{registry, Problem, Region};

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).unwrap_or_else(|e| error_json(&e.to_string()))
}

fn error_json(msg: &str) -> String {
    format!("{{\"error\":{}}}", serde_json::Value::from(msg))
}

fn lookup(name: &str) -> Result<Problem, String> {
    registry()
        .into_iter()
        .find(|p| p.name() == name)
        .ok_or_else(|| format!("unknown problem '{name}'"))
}

#[derive(Serialize)]
struct ProblemInfo {
    name: String,
    n: usize,
    m: usize,
    domain: Region,
}

/// Built-in problems with their domains.
#[wasm_bindgen]
pub fn problems() -> String {
    let infos: Vec<ProblemInfo> = registry()
        .into_iter()
        .map(|p| ProblemInfo {
            name: p.name().to_string(),
            n: p.dim(),
            m: p.num_objectives(),
            domain: p.domain().clone(),
        })
        .collect();
    json(&infos)
}

/// Steepest descent direction at `x`.
#[wasm_bindgen]
pub fn direction(problem: &str, x: Vec<f64>) -> String {
    let run = || -> Result<String, String> {
        let p = lookup(problem)?;
        let r = steepest_descent_direction(&p, &x, mosd_core::minnorm::DEFAULT_TOL)
            .map_err(|e| e.to_string())?;
        #[derive(Serialize)]
        struct Out {
            lambda: Vec<f64>,
            theta: f64,
            lambda_norm: f64,
            slopes: Vec<f64>,
            weights: Vec<f64>,
            critical: bool,
            converged: bool,
        }
        Ok(json(&Out {
            lambda_norm: r.lambda_norm(),
            critical: is_pareto_critical(&r, 1e-8),
            weights: r.weights.as_slice().to_vec(),
            lambda: r.lambda,
            theta: r.theta,
            slopes: r.slopes,
            converged: r.converged,
        }))
    };
    run().unwrap_or_else(|e| error_json(&e))
}

/// Armijo descent trace from `x0`.
#[wasm_bindgen]
pub fn descend(problem: &str, x0: Vec<f64>, eps_crit: f64, max_iters: u32) -> String {
    let run = || -> Result<String, String> {
        let p = lookup(problem)?;
        let params = DescentParams {
            eps_crit,
            max_iters: max_iters as usize,
            ..DescentParams::default()
        };
        let trace = run_descent(&p, &x0, &params).map_err(|e| e.to_string())?;
        Ok(json(&trace))
    };
    run().unwrap_or_else(|e| error_json(&e))
}

/// One pair of the sharpness family with both directions, for drawing.
#[wasm_bindgen]
pub fn pair_detail(t: f64) -> String {
    let run = || -> Result<String, String> {
        let p = lookup("paper-counterexample")?;
        let (y, z) = continuity::counterexample_pair(t).map_err(|e| e.to_string())?;
        let ry = steepest_descent_direction(&p, &y, 1e-12).map_err(|e| e.to_string())?;
        let rz = steepest_descent_direction(&p, &z, 1e-12).map_err(|e| e.to_string())?;
        let s = continuity::holder_sample(&p, &y, &z, 1e-12).map_err(|e| e.to_string())?;
        #[derive(Serialize)]
        struct Out {
            t: f64,
            y: Vec<f64>,
            z: Vec<f64>,
            lambda_y: Vec<f64>,
            lambda_z: Vec<f64>,
            dist: f64,
            dlambda: f64,
            q_half: f64,
            q_075: f64,
            q_1: f64,
        }
        Ok(json(&Out {
            t,
            y,
            z,
            lambda_y: ry.lambda,
            lambda_z: rz.lambda,
            dist: s.dist,
            dlambda: s.dlambda,
            q_half: s.quotient(0.5),
            q_075: s.quotient(0.75),
            q_1: s.quotient(1.0),
        }))
    };
    run().unwrap_or_else(|e| error_json(&e))
}

/// The family sampled at log-spaced `t` with the fitted exponent.
#[wasm_bindgen]
pub fn family(t_min: f64, t_max: f64, n_points: u32) -> String {
    let run = || -> Result<String, String> {
        let rows = continuity::counterexample_family(t_min, t_max, n_points as usize)
            .map_err(|e| e.to_string())?;
        #[derive(Serialize)]
        struct Row {
            t: f64,
            dist: f64,
            dlambda: f64,
            q_half: f64,
        }
        let samples: Vec<continuity::HolderSample> = rows.iter().map(|(_, s)| s.clone()).collect();
        let fit = continuity::fit_exponent(&samples).ok();
        #[derive(Serialize)]
        struct Out {
            rows: Vec<Row>,
            fit: Option<continuity::ExponentFit>,
        }
        Ok(json(&Out {
            rows: rows
                .into_iter()
                .map(|(t, s)| Row {
                    t,
                    dist: s.dist,
                    dlambda: s.dlambda,
                    q_half: s.quotient(0.5),
                })
                .collect(),
            fit,
        }))
    };
    run().unwrap_or_else(|e| error_json(&e))
}

/// Region probe against the sqrt(2 L M) bound on a ball.
#[wasm_bindgen]
pub fn holder_probe(
    problem: &str,
    center_x: f64,
    center_y: f64,
    radius: f64,
    scales: Vec<f64>,
    n_pairs: u32,
    seed: u32,
) -> String {
    let run = || -> Result<String, String> {
        let p = lookup(problem)?;
        let region = Region::ball(vec![center_x, center_y], radius).map_err(|e| e.to_string())?;
        let report = continuity::probe_region(&p, &region, n_pairs as usize, &scales, seed as u64)
            .map_err(|e| e.to_string())?;
        #[derive(Serialize)]
        struct Point {
            scale: f64,
            dist: f64,
            q_half: f64,
        }
        #[derive(Serialize)]
        struct Out {
            points: Vec<Point>,
            summary: continuity::ProbeSummary,
        }
        Ok(json(&Out {
            points: report
                .samples
                .iter()
                .map(|(scale, s)| Point {
                    scale: *scale,
                    dist: s.dist,
                    q_half: s.quotient(0.5),
                })
                .collect(),
            summary: report.summary,
        }))
    };
    run().unwrap_or_else(|e| error_json(&e))
}

/// Row-major `res x res` grid of `|L(x)|` over the window, NaN outside the
/// domain. Drives the criticality heatmap.
#[wasm_bindgen]
pub fn criticality_grid(
    problem: &str,
    x_min: f64,
    x_max: f64,
    y_min: f64,
    y_max: f64,
    res: u32,
) -> Vec<f64> {
    let Ok(p) = lookup(problem) else {
        return Vec::new();
    };
    if p.dim() != 2 || res < 2 {
        return Vec::new();
    }
    let res = res as usize;
    let mut grid = Vec::with_capacity(res * res);
    for row in 0..res {
        // row 0 at y_max so the buffer maps directly onto canvas pixels
        let y = y_max - (y_max - y_min) * row as f64 / (res - 1) as f64;
        for col in 0..res {
            let x = x_min + (x_max - x_min) * col as f64 / (res - 1) as f64;
            let value = match steepest_descent_direction(&p, &[x, y], 1e-9) {
                Ok(r) => r.lambda_norm(),
                Err(_) => f64::NAN,
            };
            grid.push(value);
        }
    }
    grid
}
