//! Empirical continuity checks for the steepest descent direction.
//!
//! On a convex bounded region where every gradient is L-Lipschitz and
//! bounded in norm by M, the direction satisfies
//! `|L(y) - L(z)| <= sqrt(2 L M) |y - z|^(1/2)` and its norm is plain
//! L-Lipschitz. The exponent 1/2 cannot be improved: on the built-in
//! `paper-counterexample` the pair family
//!
//! ```text
//! y_t = cos t (cos t, sin t),    z_t = (1, cos t sin t),
//! ```
//!
//! has `|y_t - z_t| = sin^2 t` while `|L(y_t) - L(z_t)| = sin t`, so the
//! exponent-eta quotient behaves like `(sin t)^(1 - 2 eta)`: bounded and
//! equal to 1 at eta = 1/2, divergent as t -> 0 for every eta > 1/2.

use serde::Serialize;

use crate::direction::steepest_descent_direction;
use crate::error::{Error, Result};
use crate::problems::{estimate_region_constants, Problem, Region, RegionConstants};
use crate::rng;
use crate::vecmath::{add_scaled, dist};

/// Dual tolerance used by the probes; two orders below the smallest pair
/// separation the lab accepts, so solver noise sits well under the signal.
pub const PROBE_DUAL_TOL: f64 = 1e-12;

/// Smallest pair separation the lab probes; below this the quotient's
/// denominator would be dominated by solver noise.
pub const MIN_PROBE_SCALE: f64 = 1e-8;

/// One probe pair with the distances entering the Hölder quotients.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HolderSample {
    pub y: Vec<f64>,
    pub z: Vec<f64>,
    /// `|y - z|` (always positive for stored samples).
    pub dist: f64,
    /// `|L(y) - L(z)|`.
    pub dlambda: f64,
    /// `| |L(y)| - |L(z)| |`.
    pub dnorm: f64,
    pub lambda_y_norm: f64,
    pub lambda_z_norm: f64,
}

impl HolderSample {
    /// `dlambda / dist^eta`.
    pub fn quotient(&self, eta: f64) -> f64 {
        self.dlambda / self.dist.powf(eta)
    }
}

/// Least-squares fit of `log dlambda` against `log dist`; the slope is the
/// empirical Hölder exponent.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ExponentFit {
    pub slope: f64,
    pub intercept: f64,
    #[serde(rename = "r2")]
    pub r_squared: f64,
    pub n_samples: usize,
}

/// The pair family exhibiting sharpness of the exponent 1/2, for
/// `0 < t < pi/2`.
pub fn counterexample_pair(t: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    if !(t > 0.0 && t < std::f64::consts::FRAC_PI_2) {
        return Err(Error::invalid(format!(
            "t must lie strictly between 0 and pi/2, got {t}"
        )));
    }
    let (c, s) = (t.cos(), t.sin());
    // cos^2 t is evaluated as 1 - sin^2 t so the circle identity
    // |y|^2 = y_1 holds to machine precision, and the shared cs keeps the
    // second components bit-identical, making |y - z| = |1 - y_1| exact.
    // y_1 itself still lives on the f64 grid near 1 (spacing ~1.1e-16),
    // which caps the relative accuracy of |y - z| at ~1e-16 / sin^2 t;
    // no f64 realization of the family can do better
    let cs = c * s;
    Ok((vec![1.0 - s * s, cs], vec![1.0, cs]))
}

/// Computes the direction at both points and packages the distances.
pub fn holder_sample(problem: &Problem, y: &[f64], z: &[f64], tol: f64) -> Result<HolderSample> {
    let d = dist(y, z);
    if d == 0.0 {
        return Err(Error::invalid("probe points must be distinct"));
    }
    let ry = steepest_descent_direction(problem, y, tol)?;
    let rz = steepest_descent_direction(problem, z, tol)?;
    if !ry.converged || !rz.converged {
        return Err(Error::NotConverged(
            "dual solver failed on a probe pair".into(),
        ));
    }
    let sample = HolderSample {
        dist: d,
        dlambda: dist(&ry.lambda, &rz.lambda),
        dnorm: (ry.lambda_norm() - rz.lambda_norm()).abs(),
        lambda_y_norm: ry.lambda_norm(),
        lambda_z_norm: rz.lambda_norm(),
        y: y.to_vec(),
        z: z.to_vec(),
    };
    if !(sample.dlambda.is_finite() && sample.dnorm.is_finite()) {
        return Err(Error::invalid("non-finite probe sample"));
    }
    Ok(sample)
}

/// The counterexample family sampled at `n_points` log-spaced values of `t`
/// in `[t_min, t_max]`. Returns `(t, sample)` rows.
pub fn counterexample_family(
    t_min: f64,
    t_max: f64,
    n_points: usize,
) -> Result<Vec<(f64, HolderSample)>> {
    if n_points == 0 {
        return Err(Error::invalid("need at least one point"));
    }
    if !(t_min > 0.0 && t_min <= t_max && t_max < std::f64::consts::FRAC_PI_2) {
        return Err(Error::invalid(
            "need 0 < t_min <= t_max < pi/2 for the pair family",
        ));
    }
    let problem = Problem::builtin("paper-counterexample").expect("registry problem");
    let mut rows = Vec::with_capacity(n_points);
    for k in 0..n_points {
        let t = if n_points == 1 {
            t_min
        } else {
            let frac = k as f64 / (n_points - 1) as f64;
            (t_min.ln() + frac * (t_max.ln() - t_min.ln())).exp()
        };
        let (y, z) = counterexample_pair(t)?;
        rows.push((t, holder_sample(&problem, &y, &z, PROBE_DUAL_TOL)?));
    }
    Ok(rows)
}

/// Summary of a region probe, including the `sqrt(2 L M)` bound check.
#[derive(Debug, Clone, Serialize)]
pub struct ProbeSummary {
    #[serde(rename = "L")]
    pub l: f64,
    #[serde(rename = "M")]
    pub m: f64,
    /// `sqrt(2 L M)`.
    pub bound: f64,
    /// Max of `dlambda / sqrt(dist)` over all samples.
    pub max_q_half: f64,
    pub fit: Option<ExponentFit>,
    /// Samples excluded from the fit because `dlambda = 0`.
    pub zero_dlambda: usize,
    pub seed: u64,
    /// Whether `max_q_half <= bound`.
    pub bound_holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProbeReport {
    /// `(scale, sample)` rows in draw order.
    pub samples: Vec<(f64, HolderSample)>,
    pub summary: ProbeSummary,
}

/// Draws `n_pairs` pairs per scale: a uniform base point and a partner at
/// exactly that scale along an isotropic direction. Draws falling outside
/// the region (or the problem domain) are rejected and redrawn; everything
/// is reproducible from `seed`.
///
/// The bound uses the problem's analytic constants when attached, otherwise
/// a seeded estimate over the region.
pub fn probe_region(
    problem: &Problem,
    region: &Region,
    n_pairs: usize,
    scales: &[f64],
    seed: u64,
) -> Result<ProbeReport> {
    probe_region_with_constants(problem, region, n_pairs, scales, seed, None)
}

/// Like [`probe_region`], but checking the bound against caller-supplied
/// constants instead of analytic/estimated ones.
pub fn probe_region_with_constants(
    problem: &Problem,
    region: &Region,
    n_pairs: usize,
    scales: &[f64],
    seed: u64,
    assumed: Option<RegionConstants>,
) -> Result<ProbeReport> {
    if n_pairs == 0 {
        return Err(Error::invalid("need n_pairs >= 1"));
    }
    if scales.is_empty() {
        return Err(Error::invalid("need at least one probe scale"));
    }
    if scales
        .iter()
        .any(|s| !s.is_finite() || *s < MIN_PROBE_SCALE)
    {
        return Err(Error::invalid(format!(
            "probe scales must be finite and at least {MIN_PROBE_SCALE}"
        )));
    }
    region.validate()?;
    if region.dim() != problem.dim() {
        return Err(Error::invalid("region dimension does not match problem"));
    }

    let constants = match assumed.or_else(|| problem.analytic_region_constants(region)) {
        Some(c) => c,
        // derived stream so the probe pairs are unaffected by estimation
        None => estimate_region_constants(problem, region, 2000, seed ^ 0x9e3779b97f4a7c15)?,
    };

    let mut rng = rng::seeded_rng(seed);
    let mut samples = Vec::with_capacity(n_pairs * scales.len());
    const MAX_ATTEMPTS: usize = 10_000;
    for &scale in scales {
        for _ in 0..n_pairs {
            let mut placed = false;
            for _ in 0..MAX_ATTEMPTS {
                let y = region.sample(&mut rng);
                if !problem.domain().contains(&y) {
                    continue;
                }
                let dir = rng::unit_vector(&mut rng, region.dim());
                let z = add_scaled(&y, scale, &dir);
                if !region.contains(&z) || !problem.domain().contains(&z) {
                    continue;
                }
                samples.push((scale, holder_sample(problem, &y, &z, PROBE_DUAL_TOL)?));
                placed = true;
                break;
            }
            if !placed {
                return Err(Error::invalid(format!(
                    "could not place a pair at scale {scale}; region too small or outside the problem domain"
                )));
            }
        }
    }

    let summary = summarize(&samples, &constants, seed);
    Ok(ProbeReport { samples, summary })
}

fn summarize(
    samples: &[(f64, HolderSample)],
    constants: &RegionConstants,
    seed: u64,
) -> ProbeSummary {
    let max_q_half = samples
        .iter()
        .map(|(_, s)| s.quotient(0.5))
        .fold(0.0f64, f64::max);
    let zero_dlambda = samples.iter().filter(|(_, s)| s.dlambda == 0.0).count();
    let unlabeled: Vec<HolderSample> = samples.iter().map(|(_, s)| s.clone()).collect();
    let bound = (2.0 * constants.l * constants.m).sqrt();
    ProbeSummary {
        l: constants.l,
        m: constants.m,
        bound,
        max_q_half,
        fit: fit_exponent(&unlabeled).ok(),
        zero_dlambda,
        seed,
        bound_holds: max_q_half <= bound,
    }
}

/// Ordinary least squares of `log dlambda` on `log dist`. Samples with
/// `dlambda = 0` carry no exponent information and are excluded; fewer than
/// two usable samples is an error.
pub fn fit_exponent(samples: &[HolderSample]) -> Result<ExponentFit> {
    let points: Vec<(f64, f64)> = samples
        .iter()
        .filter(|s| s.dlambda > 0.0 && s.dist > 0.0)
        .map(|s| (s.dist.ln(), s.dlambda.ln()))
        .collect();
    let n = points.len();
    if n < 2 {
        return Err(Error::invalid(
            "exponent fit needs at least two samples with dlambda > 0",
        ));
    }
    let nf = n as f64;
    let mean_x = points.iter().map(|(x, _)| x).sum::<f64>() / nf;
    let mean_y = points.iter().map(|(_, y)| y).sum::<f64>() / nf;
    let sxx: f64 = points
        .iter()
        .map(|(x, _)| (x - mean_x) * (x - mean_x))
        .sum();
    let sxy: f64 = points
        .iter()
        .map(|(x, y)| (x - mean_x) * (y - mean_y))
        .sum();
    if sxx <= 0.0 {
        return Err(Error::invalid(
            "exponent fit needs at least two distinct separations",
        ));
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let ss_tot: f64 = points
        .iter()
        .map(|(_, y)| (y - mean_y) * (y - mean_y))
        .sum();
    let ss_res: f64 = points
        .iter()
        .map(|(x, y)| {
            let r = y - (intercept + slope * x);
            r * r
        })
        .sum();
    let r_squared = if ss_tot > 0.0 {
        (1.0 - ss_res / ss_tot).clamp(0.0, 1.0)
    } else {
        1.0
    };
    Ok(ExponentFit {
        slope,
        intercept,
        r_squared,
        n_samples: n,
    })
}

/// Max over samples of `dnorm - L * dist`; nonpositive when the direction
/// norm is L-Lipschitz on the sampled region. The raw signed max is
/// returned (callers clip at zero for reporting).
pub fn norm_lipschitz_check(samples: &[HolderSample], l: f64) -> f64 {
    samples
        .iter()
        .map(|s| s.dnorm - l * s.dist)
        .fold(f64::NEG_INFINITY, f64::max)
}

/// CSV rows `t_or_scale, y_1.., z_1.., dist, dlambda, dnorm, q_half, q_eta`
/// for labeled samples (the label is the family parameter or probe scale).
pub fn samples_to_csv(rows: &[(f64, HolderSample)], eta: f64) -> String {
    let n = rows.first().map(|(_, s)| s.y.len()).unwrap_or(0);
    let mut out = String::from("t_or_scale");
    for j in 1..=n {
        out.push_str(&format!(",y_{j}"));
    }
    for j in 1..=n {
        out.push_str(&format!(",z_{j}"));
    }
    out.push_str(",dist,dlambda,dnorm,q_half,q_eta\n");
    for (key, s) in rows {
        out.push_str(&key.to_string());
        for v in s.y.iter().chain(&s.z) {
            out.push_str(&format!(",{v}"));
        }
        out.push_str(&format!(
            ",{},{},{},{},{}\n",
            s.dist,
            s.dlambda,
            s.dnorm,
            s.quotient(0.5),
            s.quotient(eta)
        ));
    }
    out
}

/// `|L(x)|` at a point; the heatmap quantity used by the demos.
pub fn criticality_measure(problem: &Problem, x: &[f64]) -> Result<f64> {
    Ok(steepest_descent_direction(problem, x, PROBE_DUAL_TOL)?.lambda_norm())
}
