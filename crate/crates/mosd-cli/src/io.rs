//! Input parsing, problem loading, and output plumbing.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use mosd_core::problems::{registry, Problem, Region};

/// Maps errors to the documented exit codes: 2 for invalid input (including
/// IO and parse problems), 3 for solver non-convergence.
pub fn exit_code_for(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<mosd_core::Error>() {
        Some(mosd_core::Error::NotConverged(_)) => 3,
        Some(mosd_core::Error::LinesearchFailed { .. }) => 3,
        _ => 2,
    }
}

/// Registry name or path to a JSON descriptor; an existing file wins.
pub fn load_problem(spec: &str) -> Result<Problem> {
    let path = Path::new(spec);
    if path.exists() {
        let json = fs::read_to_string(path)
            .with_context(|| format!("reading problem file {}", path.display()))?;
        return Ok(Problem::from_json(&json)?);
    }
    registry()
        .into_iter()
        .find(|p| p.name() == spec)
        .ok_or_else(|| {
            let names: Vec<String> = registry().iter().map(|p| p.name().to_string()).collect();
            anyhow!(mosd_core::Error::InvalidInput(format!(
                "unknown problem '{spec}' (built-ins: {}; or pass a JSON descriptor path)",
                names.join(", ")
            )))
        })
}

/// Comma- or whitespace-separated decimals.
pub fn parse_point(text: &str) -> Result<Vec<f64>> {
    let fields: Vec<&str> = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|f| !f.is_empty())
        .collect();
    if fields.is_empty() {
        bail!(mosd_core::Error::InvalidInput("empty point".into()));
    }
    fields
        .iter()
        .map(|f| {
            f.parse::<f64>().map_err(|_| {
                anyhow!(mosd_core::Error::InvalidInput(format!(
                    "'{f}' is not a number"
                )))
            })
        })
        .collect()
}

/// A point from `--<name>` or, when given, the overriding `--<name>-file`.
pub fn resolve_point(inline: Option<&str>, file: Option<&PathBuf>, flag: &str) -> Result<Vec<f64>> {
    if let Some(path) = file {
        let text = fs::read_to_string(path)
            .with_context(|| format!("reading point file {}", path.display()))?;
        return parse_point(&text);
    }
    match inline {
        Some(text) => parse_point(text),
        None => bail!(mosd_core::Error::InvalidInput(format!(
            "missing point: pass --{flag} or --{flag}-file"
        ))),
    }
}

pub fn parse_scales(text: &str) -> Result<Vec<f64>> {
    let scales = parse_point(text)?;
    Ok(scales)
}

/// Region from the probe flags, defaulting to the problem domain.
pub fn resolve_region(
    problem: &Problem,
    center: Option<&str>,
    radius: Option<f64>,
    box_region: Option<&str>,
) -> Result<Region> {
    match (center, radius, box_region) {
        (Some(c), Some(r), None) => Ok(Region::ball(parse_point(c)?, r)?),
        (None, None, Some(b)) => {
            let mut lower = Vec::new();
            let mut upper = Vec::new();
            for pair in b.split(',').filter(|s| !s.is_empty()) {
                let (lo, hi) = pair.split_once(':').ok_or_else(|| {
                    anyhow!(mosd_core::Error::InvalidInput(format!(
                        "box interval '{pair}' must be lo:hi"
                    )))
                })?;
                lower.push(parse_point(lo)?[0]);
                upper.push(parse_point(hi)?[0]);
            }
            Ok(Region::bounding_box(lower, upper)?)
        }
        (None, None, None) => Ok(problem.domain().clone()),
        _ => bail!(mosd_core::Error::InvalidInput(
            "give either --center with --radius, or --box-region".into()
        )),
    }
}

/// Writes to the path or stdout.
pub fn emit(output: Option<&PathBuf>, content: &str) -> Result<()> {
    match output {
        Some(path) => {
            fs::write(path, content).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{content}"),
    }
    Ok(())
}
