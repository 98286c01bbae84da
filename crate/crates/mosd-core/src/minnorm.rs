//! Minimum-norm point in the convex hull of finitely many vectors.
//!
//! This is the dual of the steepest-descent subproblem: maximizing
//! `-|sum_i a_i g_i|^2 / 2` over the unit simplex is the same as projecting
//! the origin onto `conv{g_1, ..., g_m}`. The primary solver is Wolfe's
//! active-set method (exact affine minimizers over a corral of rows, with
//! major/minor cycles), which terminates finitely and reaches the high
//! accuracy the continuity experiments need at pair separations down to
//! `1e-8`. A simplex-grid brute force serves as the independent test oracle.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::GradientMatrix;
use crate::vecmath::{self, dot, norm, norm_sq};

/// Default scaled-certificate tolerance: two orders below the smallest pair
/// separations probed by the continuity lab.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Dual variables: a point of the unit simplex.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct SimplexWeights {
    alpha: Vec<f64>,
}

impl SimplexWeights {
    /// Validates nonnegativity (exact, after clamping by the solver) and
    /// that the components sum to 1 within `1e-12`.
    pub fn new(alpha: Vec<f64>) -> Result<Self> {
        if alpha.is_empty() {
            return Err(Error::invalid("weights must be non-empty"));
        }
        if alpha.iter().any(|a| !a.is_finite() || *a < 0.0) {
            return Err(Error::invalid("weights must be finite and nonnegative"));
        }
        let sum: f64 = alpha.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::invalid(format!("weights sum to {sum}, expected 1")));
        }
        Ok(SimplexWeights { alpha })
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.alpha
    }

    pub fn len(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alpha.is_empty()
    }
}

/// Output of a minimum-norm-point computation.
#[derive(Debug, Clone, Serialize)]
pub struct MinNormResult {
    /// Dual weights reconstructing `point`.
    pub weights: SimplexWeights,
    /// The hull element `u* = sum_i alpha_i g_i`.
    pub point: Vec<f64>,
    /// `|u*|^2`.
    pub norm_sq: f64,
    /// Major cycles (Wolfe), grid points visited (brute force), or 1
    /// (closed form).
    pub iterations: usize,
    /// Whether the scaled projection certificate holds at `point`.
    pub converged: bool,
}

/// Scaled optimality certificate: `<u, g_i - u> >= -tol (1 + |u| |g_i|)`
/// for every row. This is the variational inequality of the projection of
/// the origin onto the hull.
fn certificate_holds(g: &GradientMatrix, u: &[f64], tol: f64) -> bool {
    let un = norm(u);
    let usq = norm_sq(u);
    g.rows()
        .all(|row| dot(u, row) - usq >= -tol * (1.0 + un * norm(row)))
}

fn validate_inputs(g: &GradientMatrix, tol: f64) -> Result<()> {
    if !g.is_finite() {
        return Err(Error::invalid("gradient matrix has non-finite entries"));
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::invalid("tolerance must be positive and finite"));
    }
    Ok(())
}

/// Weights kept in `(support, w)` sparse form during the active-set run.
struct Corral {
    support: Vec<usize>,
    w: Vec<f64>,
}

impl Corral {
    fn point(&self, g: &GradientMatrix) -> Vec<f64> {
        let mut full = vec![0.0; g.num_rows()];
        for (i, wi) in self.support.iter().zip(&self.w) {
            full[*i] = *wi;
        }
        g.combine(&full)
    }
}

/// Projects the origin onto the convex hull of the rows of `g`.
///
/// On success the weights satisfy complementary slackness against `tol` and
/// `point` is their exact combination of the rows. A result that fails the
/// optimality certificate is returned with `converged = false`, never
/// silently.
pub fn min_norm_point(g: &GradientMatrix, tol: f64) -> Result<MinNormResult> {
    validate_inputs(g, tol)?;
    let m = g.num_rows();

    // start from the smallest-norm row
    let start = (0..m)
        .min_by(|a, b| norm_sq(g.row(*a)).total_cmp(&norm_sq(g.row(*b))))
        .expect("m >= 1");

    let major_limit = 50 * m;
    let mut corral = Corral {
        support: vec![start],
        w: vec![1.0],
    };
    let mut x = g.row(start).to_vec();
    let mut majors = 0usize;
    let mut total_majors = 0usize;
    let mut restarted = false;
    let mut degenerate_events = 0usize;

    loop {
        majors += 1;
        total_majors += 1;

        // optimality test: the row with the most negative scaled slack;
        // same scaling as `certificate_holds`, so loop exit and the
        // reported `converged` flag cannot disagree
        let xsq = norm_sq(&x);
        let xn = xsq.sqrt();
        let slack_of = |i: usize| {
            let row = g.row(i);
            dot(&x, row) - xsq + tol * (1.0 + xn * norm(row))
        };
        let p = (0..m)
            .min_by(|a, b| slack_of(*a).total_cmp(&slack_of(*b)))
            .expect("m >= 1");
        if slack_of(p) >= 0.0 {
            return Ok(finalize(g, &corral, total_majors, tol));
        }

        let over_budget = majors > major_limit || degenerate_events > m;
        let stuck = corral.support.contains(&p);
        if over_budget || stuck {
            if !restarted {
                // degenerate geometry: polish the weights with projected
                // gradient on the simplex, then re-enter the active set
                corral = projected_gradient_restart(g, 10 * m);
                settle(g, &mut corral);
                x = corral.point(g);
                restarted = true;
                majors = 0;
                degenerate_events = 0;
                continue;
            }
            return Ok(finalize(g, &corral, total_majors, tol));
        }

        corral.support.push(p);
        corral.w.push(0.0);
        if !minor_cycles(g, &mut corral) {
            degenerate_events += 1;
        }
        x = corral.point(g);
    }
}

/// Runs minor cycles until the corral's affine minimizer has nonnegative
/// coordinates, updating weights in place. Returns false when a degenerate
/// affine system forced a point to be dropped instead.
fn minor_cycles(g: &GradientMatrix, corral: &mut Corral) -> bool {
    const ZERO: f64 = 1e-12;
    // |support| strictly decreases on every pass that does not exit, so this
    // loop runs at most m times per call
    loop {
        if corral.support.len() == 1 {
            corral.w[0] = 1.0;
            return true;
        }
        let Some(v) = affine_minimizer(g, &corral.support) else {
            // affinely dependent corral from round-off: drop the newest point
            corral.support.pop();
            corral.w.pop();
            let s: f64 = corral.w.iter().sum();
            if s > 0.0 {
                corral.w.iter_mut().for_each(|wi| *wi /= s);
            } else {
                let k = corral.w.len();
                corral.w.iter_mut().for_each(|wi| *wi = 1.0 / k as f64);
            }
            return false;
        };
        if v.iter().all(|vi| *vi > ZERO) {
            corral.w = v;
            return true;
        }
        // step from w toward v until the first coordinate hits zero
        let mut theta = 1.0f64;
        for (wi, vi) in corral.w.iter().zip(&v) {
            if *vi <= ZERO {
                let denom = wi - vi;
                if denom > 0.0 {
                    theta = theta.min(wi / denom);
                }
            }
        }
        let keep: Vec<bool> = corral
            .w
            .iter()
            .zip(&v)
            .map(|(wi, vi)| {
                let new = (1.0 - theta) * wi + theta * vi;
                new > ZERO
            })
            .collect();
        let mut new_support = Vec::with_capacity(corral.support.len());
        let mut new_w = Vec::with_capacity(corral.support.len());
        let mut dropped = false;
        for ((idx, wi), (vi, k)) in corral
            .support
            .iter()
            .zip(&corral.w)
            .zip(v.iter().zip(&keep))
        {
            if *k {
                new_support.push(*idx);
                new_w.push((1.0 - theta) * wi + theta * vi);
            } else {
                dropped = true;
            }
        }
        if !dropped {
            // theta made no coordinate vanish (can only happen from
            // round-off); force the smallest one out
            let drop_at = (0..new_w.len())
                .min_by(|a, b| new_w[*a].total_cmp(&new_w[*b]))
                .expect("non-empty");
            new_support.remove(drop_at);
            new_w.remove(drop_at);
        }
        let s: f64 = new_w.iter().sum();
        new_w.iter_mut().for_each(|wi| *wi /= s);
        corral.support = new_support;
        corral.w = new_w;
    }
}

/// Minimizer of `|sum_i v_i g_i|^2` over the affine hull of the support
/// rows (`sum v_i = 1`, sign-free). `None` when the bordered KKT system is
/// numerically singular, i.e. the rows are affinely dependent.
fn affine_minimizer(g: &GradientMatrix, support: &[usize]) -> Option<Vec<f64>> {
    let s = support.len();
    // bordered system: [Gram  -1; 1^T  0] [v; lambda] = [0; 1]
    let dim = s + 1;
    let mut a = vec![0.0; dim * dim];
    let mut rhs = vec![0.0; dim];
    let mut gram_scale = 0.0f64;
    for (r, &i) in support.iter().enumerate() {
        for (c, &j) in support.iter().enumerate() {
            let q = dot(g.row(i), g.row(j));
            a[r * dim + c] = q;
            gram_scale = gram_scale.max(q.abs());
        }
        a[s * dim + r] = 1.0;
    }
    // normalize the Gram block to O(1): the minimizer is invariant and the
    // border rows stay commensurate, so one pivot floor covers the system
    let gram_scale = gram_scale.max(1e-300);
    for r in 0..s {
        for c in 0..s {
            a[r * dim + c] /= gram_scale;
        }
        a[r * dim + s] = -1.0;
    }
    rhs[s] = 1.0;

    let mut v = solve_dense(&mut a, &mut rhs, dim, 1e-13)?;
    v.truncate(s);
    Some(v)
}

/// Gaussian elimination with partial pivoting; `None` on a pivot below
/// `pivot_floor`.
fn solve_dense(a: &mut [f64], rhs: &mut [f64], dim: usize, pivot_floor: f64) -> Option<Vec<f64>> {
    for col in 0..dim {
        let pivot_row = (col..dim)
            .max_by(|r1, r2| a[r1 * dim + col].abs().total_cmp(&a[r2 * dim + col].abs()))?;
        if a[pivot_row * dim + col].abs() <= pivot_floor {
            return None;
        }
        if pivot_row != col {
            for c in 0..dim {
                a.swap(col * dim + c, pivot_row * dim + c);
            }
            rhs.swap(col, pivot_row);
        }
        let pivot = a[col * dim + col];
        for row in col + 1..dim {
            let factor = a[row * dim + col] / pivot;
            if factor == 0.0 {
                continue;
            }
            for c in col..dim {
                a[row * dim + c] -= factor * a[col * dim + c];
            }
            rhs[row] -= factor * rhs[col];
        }
    }
    let mut x = vec![0.0; dim];
    for row in (0..dim).rev() {
        let mut acc = rhs[row];
        for c in row + 1..dim {
            acc -= a[row * dim + c] * x[c];
        }
        x[row] = acc / a[row * dim + row];
    }
    Some(x)
}

/// A fixed number of projected-gradient steps on the dual over the full
/// simplex, used to escape degenerate active-set geometry.
fn projected_gradient_restart(g: &GradientMatrix, iters: usize) -> Corral {
    let m = g.num_rows();
    let mut alpha = vec![1.0 / m as f64; m];
    // 1/trace(G G^T) underestimates 1/lambda_max, so the step is safe
    let trace: f64 = g.rows().map(norm_sq).sum();
    let step = 1.0 / trace.max(1e-300);
    for _ in 0..iters {
        let u = g.combine(&alpha);
        let moved: Vec<f64> = alpha
            .iter()
            .zip(g.rows())
            .map(|(ai, row)| ai - step * dot(row, &u))
            .collect();
        alpha = project_simplex(&moved);
    }
    let mut support = Vec::new();
    let mut w = Vec::new();
    for (i, ai) in alpha.iter().enumerate() {
        if *ai > 1e-10 {
            support.push(i);
            w.push(*ai);
        }
    }
    if support.is_empty() {
        support.push(0);
        w.push(1.0);
    }
    let s: f64 = w.iter().sum();
    w.iter_mut().for_each(|wi| *wi /= s);
    Corral { support, w }
}

/// Euclidean projection onto the unit simplex (sort-and-threshold).
fn project_simplex(y: &[f64]) -> Vec<f64> {
    let mut sorted = y.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut cumsum = 0.0;
    let mut tau = 0.0;
    for (j, yj) in sorted.iter().enumerate() {
        cumsum += yj;
        let candidate = (cumsum - 1.0) / (j + 1) as f64;
        if yj - candidate > 0.0 {
            tau = candidate;
        }
    }
    y.iter().map(|yi| (yi - tau).max(0.0)).collect()
}

/// Settles the corral into a proper Wolfe state (weights equal to the
/// affine minimizer, all nonnegative).
fn settle(g: &GradientMatrix, corral: &mut Corral) {
    minor_cycles(g, corral);
}

fn finalize(g: &GradientMatrix, corral: &Corral, iterations: usize, tol: f64) -> MinNormResult {
    let m = g.num_rows();
    let mut full = vec![0.0; m];
    for (i, wi) in corral.support.iter().zip(&corral.w) {
        full[*i] = *wi;
    }
    // round-off clamp: tiny negatives to exact zero, then renormalize
    for wi in full.iter_mut() {
        debug_assert!(*wi >= -1e-14, "weight {wi} below clamp window");
        if *wi < 0.0 {
            *wi = 0.0;
        }
    }
    let sum: f64 = full.iter().sum();
    full.iter_mut().for_each(|wi| *wi /= sum);

    let point = g.combine(&full);
    let nsq = norm_sq(&point);
    MinNormResult {
        weights: SimplexWeights::new(full).expect("clamped weights are a simplex point"),
        norm_sq: nsq,
        converged: certificate_holds(g, &point, tol),
        point,
        iterations,
    }
}

/// Closed-form projection of the origin onto the segment `[g1, g2]`.
pub fn project_segment(g1: &[f64], g2: &[f64]) -> Result<MinNormResult> {
    if g1.len() != g2.len() || g1.is_empty() {
        return Err(Error::invalid("segment endpoints must share a dimension"));
    }
    if !vecmath::all_finite(g1) || !vecmath::all_finite(g2) {
        return Err(Error::invalid("segment endpoints must be finite"));
    }
    let d = vecmath::sub(g2, g1);
    let dd = norm_sq(&d);
    let alpha1 = if dd == 0.0 {
        1.0
    } else {
        (dot(g2, &d) / dd).clamp(0.0, 1.0)
    };
    let point: Vec<f64> = g1
        .iter()
        .zip(g2)
        .map(|(a, b)| alpha1 * a + (1.0 - alpha1) * b)
        .collect();
    Ok(MinNormResult {
        weights: SimplexWeights::new(vec![alpha1, 1.0 - alpha1])?,
        norm_sq: norm_sq(&point),
        point,
        iterations: 1,
        converged: true,
    })
}

/// Brute-force oracle: scans every simplex grid point with denominator
/// `resolution` (all compositions of `resolution` into `m` parts, in
/// lexicographic order) and keeps the first combination of smallest norm.
///
/// Guarded to `m <= 4`; the grid has `C(resolution + m - 1, m - 1)` points.
pub fn min_norm_bruteforce(g: &GradientMatrix, resolution: usize) -> Result<MinNormResult> {
    let m = g.num_rows();
    if m > 4 {
        return Err(Error::Unsupported(format!(
            "brute force is limited to m <= 4, got m = {m}"
        )));
    }
    if resolution < 2 {
        return Err(Error::invalid("resolution must be at least 2"));
    }
    if !g.is_finite() {
        return Err(Error::invalid("gradient matrix has non-finite entries"));
    }

    let r = resolution as f64;
    let mut best: Option<(f64, Vec<usize>)> = None;
    let mut visited = 0usize;
    let mut counts = vec![0usize; m];
    let mut scaled = vec![0.0f64; m];
    visit_compositions(resolution, m, &mut counts, 0, &mut |counts| {
        visited += 1;
        // combine integer counts and divide the point once: a single
        // rounding, so vertex grid points are reproduced exactly
        for (s, c) in scaled.iter_mut().zip(counts) {
            *s = *c as f64;
        }
        let u: Vec<f64> = g.combine(&scaled).into_iter().map(|v| v / r).collect();
        let nsq = norm_sq(&u);
        // strict improvement keeps the lexicographically smallest tie
        if best.as_ref().is_none_or(|(b, _)| nsq < *b) {
            best = Some((nsq, counts.to_vec()));
        }
    });

    let (_, counts) = best.expect("grid is non-empty");
    let alpha: Vec<f64> = counts.iter().map(|c| *c as f64 / r).collect();
    let scaled: Vec<f64> = counts.iter().map(|c| *c as f64).collect();
    let point: Vec<f64> = g.combine(&scaled).into_iter().map(|v| v / r).collect();
    Ok(MinNormResult {
        weights: SimplexWeights::new(alpha)?,
        norm_sq: norm_sq(&point),
        point,
        iterations: visited,
        converged: true,
    })
}

/// Visits compositions of `total` into `parts` nonnegative integers in
/// lexicographic order.
fn visit_compositions(
    total: usize,
    parts: usize,
    scratch: &mut Vec<usize>,
    at: usize,
    f: &mut impl FnMut(&[usize]),
) {
    if at == parts - 1 {
        scratch[at] = total;
        f(scratch);
        return;
    }
    for a in 0..=total {
        scratch[at] = a;
        visit_compositions(total - a, parts, scratch, at + 1, f);
    }
}
