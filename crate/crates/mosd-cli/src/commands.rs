//! Command implementations.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use serde::Serialize;

use mosd_core::continuity;
use mosd_core::descent::{run_descent, DescentParams};
use mosd_core::direction::{is_pareto_critical, steepest_descent_direction, DirectionResult};
use mosd_core::problems::{check_gradients, registry, Problem, RegionConstants};

use crate::io;
use crate::Command;

pub fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::ListProblems { export } => list_problems(export),
        Command::Direction {
            problem,
            x,
            x_file,
            tol,
            eps_crit,
            output,
        } => direction(
            &problem,
            x.as_deref(),
            x_file.as_ref(),
            tol,
            eps_crit,
            output,
        ),
        Command::Descend {
            problem,
            x0,
            x0_file,
            sigma,
            beta,
            t0,
            max_iters,
            eps_crit,
            max_backtracks,
            tol,
            output,
        } => {
            let params = DescentParams {
                sigma,
                beta,
                t0,
                max_iters,
                eps_crit,
                max_backtracks,
                tol,
            };
            descend(&problem, x0.as_deref(), x0_file.as_ref(), params, output)
        }
        Command::HolderProbe {
            problem,
            center,
            radius,
            box_region,
            scales,
            pairs,
            eta,
            seed,
            assume_l,
            assume_m,
            samples_out,
            output,
        } => holder_probe(
            &problem,
            center.as_deref(),
            radius,
            box_region.as_deref(),
            &scales,
            pairs,
            eta,
            seed,
            assume_l.zip(assume_m),
            samples_out,
            output,
        ),
        Command::Counterexample {
            t_min,
            t_max,
            points,
            output,
        } => counterexample(t_min, t_max, points, output),
        Command::Gradcheck {
            problem,
            points,
            h,
            seed,
            output,
        } => gradcheck(&problem, points, h, seed, output),
    }
}

fn list_problems(export: Option<PathBuf>) -> Result<ExitCode> {
    let problems = registry();
    println!("{:<22} {:>3} {:>3}  domain", "name", "n", "m");
    for p in &problems {
        println!(
            "{:<22} {:>3} {:>3}  {}",
            p.name(),
            p.dim(),
            p.num_objectives(),
            describe_region(p)
        );
    }
    if let Some(dir) = export {
        fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
        for p in &problems {
            let descriptor = p.descriptor().expect("built-in problems are polynomial");
            let path = dir.join(format!("{}.json", p.name()));
            fs::write(&path, descriptor.to_json())
                .with_context(|| format!("writing {}", path.display()))?;
            eprintln!("wrote {}", path.display());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn describe_region(p: &Problem) -> String {
    match p.domain() {
        mosd_core::problems::Region::Ball { center, radius } => {
            format!("ball(center {center:?}, radius {radius})")
        }
        mosd_core::problems::Region::Box { lower, upper } => {
            format!("box({lower:?} .. {upper:?})")
        }
    }
}

#[derive(Serialize)]
struct DirectionOutput<'a> {
    problem: &'a str,
    x: &'a [f64],
    tol: f64,
    critical: bool,
    #[serde(flatten)]
    result: &'a DirectionResult,
}

fn direction(
    problem: &str,
    x: Option<&str>,
    x_file: Option<&PathBuf>,
    tol: f64,
    eps_crit: f64,
    output: Option<PathBuf>,
) -> Result<ExitCode> {
    let p = io::load_problem(problem)?;
    let point = io::resolve_point(x, x_file, "x")?;
    let result = steepest_descent_direction(&p, &point, tol)?;
    let payload = DirectionOutput {
        problem: p.name(),
        x: &point,
        tol,
        critical: is_pareto_critical(&result, eps_crit),
        result: &result,
    };
    let mut json = serde_json::to_string_pretty(&payload)?;
    json.push('\n');
    io::emit(output.as_ref(), &json)?;
    if !result.converged {
        eprintln!("warning: dual solver did not certify optimality");
        return Ok(ExitCode::from(3));
    }
    Ok(ExitCode::SUCCESS)
}

fn descend(
    problem: &str,
    x0: Option<&str>,
    x0_file: Option<&PathBuf>,
    params: DescentParams,
    output: Option<PathBuf>,
) -> Result<ExitCode> {
    let p = io::load_problem(problem)?;
    let start = io::resolve_point(x0, x0_file, "x0")?;
    let trace = run_descent(&p, &start, &params)?;
    let mut csv = trace.to_csv();
    csv.push_str(&format!(
        "# status,{}\n",
        serde_json::to_value(trace.status)?.as_str().unwrap_or("?")
    ));
    io::emit(output.as_ref(), &csv)?;
    eprintln!(
        "{}: {} iterates, status {:?}, final x {:?}",
        p.name(),
        trace.iterates.len(),
        trace.status,
        trace.final_x()
    );
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
fn holder_probe(
    problem: &str,
    center: Option<&str>,
    radius: Option<f64>,
    box_region: Option<&str>,
    scales: &str,
    pairs: usize,
    eta: f64,
    seed: u64,
    assumed: Option<(f64, f64)>,
    samples_out: Option<PathBuf>,
    output: Option<PathBuf>,
) -> Result<ExitCode> {
    let p = io::load_problem(problem)?;
    let region = io::resolve_region(&p, center, radius, box_region)?;
    let scales = io::parse_scales(scales)?;
    let constants = assumed.map(|(l, m)| RegionConstants { l, m, samples: 0 });
    let report =
        continuity::probe_region_with_constants(&p, &region, pairs, &scales, seed, constants)?;

    if let Some(path) = samples_out {
        fs::write(&path, continuity::samples_to_csv(&report.samples, eta))
            .with_context(|| format!("writing {}", path.display()))?;
        eprintln!(
            "wrote {} samples to {}",
            report.samples.len(),
            path.display()
        );
    }
    let mut json = serde_json::to_string_pretty(&report.summary)?;
    json.push('\n');
    io::emit(output.as_ref(), &json)?;

    if !report.summary.bound_holds {
        eprintln!(
            "bound violated: max quotient {} > sqrt(2 L M) = {}",
            report.summary.max_q_half, report.summary.bound
        );
        return Ok(ExitCode::from(4));
    }
    Ok(ExitCode::SUCCESS)
}

fn counterexample(
    t_min: f64,
    t_max: f64,
    points: usize,
    output: Option<PathBuf>,
) -> Result<ExitCode> {
    let rows = continuity::counterexample_family(t_min, t_max, points)?;
    let mut csv = String::from("t,dist,dlambda,q_half\n");
    for (t, s) in &rows {
        csv.push_str(&format!(
            "{t},{},{},{}\n",
            s.dist,
            s.dlambda,
            s.quotient(0.5)
        ));
    }
    let samples: Vec<continuity::HolderSample> = rows.into_iter().map(|(_, s)| s).collect();
    match continuity::fit_exponent(&samples) {
        Ok(fit) => csv.push_str(&format!(
            "# fit,slope={},intercept={},r2={},n={}\n",
            fit.slope, fit.intercept, fit.r_squared, fit.n_samples
        )),
        Err(_) => csv.push_str("# fit,unavailable (need >= 2 samples with dlambda > 0)\n"),
    }
    io::emit(output.as_ref(), &csv)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct GradcheckReport<'a> {
    problem: &'a str,
    points: usize,
    h: f64,
    seed: u64,
    max_rel_error: f64,
    worst_x: Vec<f64>,
}

fn gradcheck(
    problem: &str,
    points: usize,
    h: f64,
    seed: u64,
    output: Option<PathBuf>,
) -> Result<ExitCode> {
    let p = io::load_problem(problem)?;
    if points == 0 {
        anyhow::bail!(mosd_core::Error::InvalidInput("need points >= 1".into()));
    }
    let mut rng = mosd_core::seeded_rng(seed);
    let mut worst = 0.0f64;
    let mut worst_x = Vec::new();
    let mut checked = 0usize;
    let mut attempts = 0usize;
    while checked < points {
        attempts += 1;
        if attempts > 1000 * points {
            anyhow::bail!(mosd_core::Error::InvalidInput(
                "could not place finite-difference stencils inside the domain".into()
            ));
        }
        let x = p.domain().sample(&mut rng);
        match check_gradients(&p, &x, h) {
            Ok(err) => {
                checked += 1;
                if err > worst {
                    worst = err;
                    worst_x = x;
                }
            }
            // stencil grazed the boundary: redraw
            Err(mosd_core::Error::OutsideDomain(_)) => continue,
            Err(e) => return Err(e.into()),
        }
    }
    let report = GradcheckReport {
        problem: p.name(),
        points,
        h,
        seed,
        max_rel_error: worst,
        worst_x,
    };
    let mut json = serde_json::to_string_pretty(&report)?;
    json.push('\n');
    io::emit(output.as_ref(), &json)?;
    Ok(ExitCode::SUCCESS)
}
