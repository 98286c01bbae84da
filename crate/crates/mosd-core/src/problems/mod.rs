//! Vector objectives, their gradients, and the region constants used by the
//! continuity experiments.
//!
//! A [`Problem`] bundles `m` smooth scalar objectives on a convex bounded
//! domain. Gradients are always supplied analytically (built-in problems use
//! exact polynomial differentiation); [`check_gradients`] validates them
//! against central differences but is never used as a fallback.

mod descriptor;
mod poly;
mod region;
mod registry;

pub use descriptor::ProblemDescriptor;
pub use poly::{Polynomial, Term};
pub use region::Region;
pub use registry::{registry, registry_names};

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matrix::GradientMatrix;
use crate::rng;
use crate::vecmath;

type ScalarFn = dyn Fn(&[f64]) -> f64 + Send + Sync;
type GradFn = dyn Fn(&[f64]) -> Vec<f64> + Send + Sync;

/// One scalar objective together with its analytic gradient.
#[derive(Clone)]
pub enum Objective {
    Polynomial(Polynomial),
    Custom {
        eval: Arc<ScalarFn>,
        grad: Arc<GradFn>,
    },
}

impl Objective {
    fn eval(&self, x: &[f64]) -> f64 {
        match self {
            Objective::Polynomial(p) => p.eval(x),
            Objective::Custom { eval, .. } => eval(x),
        }
    }

    fn grad(&self, x: &[f64]) -> Vec<f64> {
        match self {
            Objective::Polynomial(p) => p.grad(x),
            Objective::Custom { grad, .. } => grad(x),
        }
    }

    fn as_polynomial(&self) -> Option<&Polynomial> {
        match self {
            Objective::Polynomial(p) => Some(p),
            Objective::Custom { .. } => None,
        }
    }
}

impl std::fmt::Debug for Objective {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Objective::Polynomial(p) => f.debug_tuple("Polynomial").field(p).finish(),
            Objective::Custom { .. } => f.write_str("Custom(..)"),
        }
    }
}

/// Closed-form region constants attached to built-in problems, so that the
/// continuity experiments do not depend on estimation noise.
#[derive(Debug, Clone, Copy)]
enum AnalyticConstants {
    /// Gradient Lipschitz constant `l`; max gradient norm is
    /// `max(sup_{x in region} |x|, m_floor)`.
    NormBased { l: f64, m_floor: f64 },
    /// Constant gradients.
    Fixed { l: f64, m: f64 },
}

/// Sampled (or analytic) estimates of the constants of the probed region:
/// `l` bounds `|grad f_i(y) - grad f_i(z)| / |y - z|`, `m` bounds
/// `|grad f_i(x)|`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct RegionConstants {
    pub l: f64,
    pub m: f64,
    /// Sample count behind the estimate; 0 when the values are analytic.
    pub samples: usize,
}

/// A smooth vector objective `f: domain -> R^m` with analytic gradients.
///
/// Problems are immutable after construction and all operations on them are
/// pure, so they can be shared freely across threads.
#[derive(Debug, Clone)]
pub struct Problem {
    name: String,
    n: usize,
    domain: Region,
    objectives: Vec<Objective>,
    analytic: Option<AnalyticConstants>,
}

impl Problem {
    /// A problem whose objectives are all polynomials.
    pub fn polynomial(
        name: impl Into<String>,
        n: usize,
        domain: Region,
        objectives: Vec<Polynomial>,
    ) -> Result<Self> {
        Problem::build(
            name.into(),
            n,
            domain,
            objectives.into_iter().map(Objective::Polynomial).collect(),
        )
    }

    /// A problem from arbitrary (pure, deterministic) closures.
    pub fn custom(
        name: impl Into<String>,
        n: usize,
        domain: Region,
        objectives: Vec<Objective>,
    ) -> Result<Self> {
        Problem::build(name.into(), n, domain, objectives)
    }

    fn build(name: String, n: usize, domain: Region, objectives: Vec<Objective>) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("ambient dimension must be at least 1"));
        }
        if objectives.is_empty() {
            return Err(Error::invalid("a problem needs at least one objective"));
        }
        domain.validate()?;
        if domain.dim() != n {
            return Err(Error::invalid(format!(
                "domain dimension {} does not match n = {n}",
                domain.dim()
            )));
        }
        for o in &objectives {
            if let Some(p) = o.as_polynomial() {
                p.validate(n)?;
            }
        }
        Ok(Problem {
            name,
            n,
            domain,
            objectives,
            analytic: None,
        })
    }

    fn with_analytic(mut self, analytic: AnalyticConstants) -> Self {
        self.analytic = Some(analytic);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.n
    }

    /// Number of objectives.
    pub fn num_objectives(&self) -> usize {
        self.objectives.len()
    }

    pub fn domain(&self) -> &Region {
        &self.domain
    }

    fn check_point(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.n {
            return Err(Error::invalid(format!(
                "point has dimension {}, problem '{}' has n = {}",
                x.len(),
                self.name,
                self.n
            )));
        }
        if !self.domain.contains(x) {
            return Err(Error::outside(format!(
                "point {x:?} is not in the domain of '{}'",
                self.name
            )));
        }
        Ok(())
    }

    /// `(f_1(x), ..., f_m(x))` in objective order.
    pub fn evaluate(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_point(x)?;
        Ok(self.objectives.iter().map(|o| o.eval(x)).collect())
    }

    /// The stacked gradients at `x`: row `i` is `grad f_i(x)`.
    pub fn jacobian(&self, x: &[f64]) -> Result<GradientMatrix> {
        self.check_point(x)?;
        GradientMatrix::from_rows(self.objectives.iter().map(|o| o.grad(x)).collect())
    }

    /// Closed-form region constants, when this problem carries them.
    pub fn analytic_region_constants(&self, region: &Region) -> Option<RegionConstants> {
        match self.analytic? {
            AnalyticConstants::NormBased { l, m_floor } => Some(RegionConstants {
                l,
                m: region.max_point_norm().max(m_floor),
                samples: 0,
            }),
            AnalyticConstants::Fixed { l, m } => Some(RegionConstants { l, m, samples: 0 }),
        }
    }

    /// The JSON descriptor of this problem, available when every objective
    /// is a polynomial.
    pub fn descriptor(&self) -> Option<ProblemDescriptor> {
        let objectives: Option<Vec<Polynomial>> = self
            .objectives
            .iter()
            .map(|o| o.as_polynomial().cloned())
            .collect();
        Some(ProblemDescriptor {
            name: self.name.clone(),
            n: self.n,
            objectives: objectives?,
            domain: self.domain.clone(),
        })
    }
}

/// Max relative error between analytic gradients and central differences
/// with step `h`, over all objectives and coordinates. The relative error
/// uses denominator `max(1, |analytic|)`.
pub fn check_gradients(problem: &Problem, x: &[f64], h: f64) -> Result<f64> {
    if h <= 0.0 || !h.is_finite() {
        return Err(Error::invalid("finite-difference step must be positive"));
    }
    problem.check_point(x)?;
    let n = problem.dim();
    let grad = problem.jacobian(x)?;
    let mut worst = 0.0f64;
    for j in 0..n {
        let mut plus = x.to_vec();
        let mut minus = x.to_vec();
        plus[j] += h;
        minus[j] -= h;
        // stencil points must stay inside the domain
        let f_plus = problem.evaluate(&plus)?;
        let f_minus = problem.evaluate(&minus)?;
        for i in 0..problem.num_objectives() {
            let fd = (f_plus[i] - f_minus[i]) / (2.0 * h);
            let analytic = grad.row(i)[j];
            let err = (fd - analytic).abs() / analytic.abs().max(1.0);
            worst = worst.max(err);
        }
    }
    Ok(worst)
}

/// Estimates the gradient Lipschitz constant `L` and the max gradient norm
/// `M` over `region` from `k` seeded uniform samples.
///
/// Both estimates are maxima over the sample set, so they are lower bounds
/// of the true constants and non-decreasing as samples accumulate. Each of
/// the `k` rounds draws one point (for `M`) and one pair (for `L`) before
/// the next round, so a run with smaller `k` and the same seed sees a prefix
/// of the same sample set.
pub fn estimate_region_constants(
    problem: &Problem,
    region: &Region,
    k: usize,
    seed: u64,
) -> Result<RegionConstants> {
    if k < 2 {
        return Err(Error::invalid("constant estimation needs k >= 2 samples"));
    }
    if !problem.domain().contains_region(region) {
        return Err(Error::invalid(
            "region must be contained in the problem domain",
        ));
    }
    let mut rng = rng::seeded_rng(seed);
    let mut l = 0.0f64;
    let mut m = 0.0f64;
    for _ in 0..k {
        let x = region.sample(&mut rng);
        let gx = problem.jacobian(&x)?;
        for row in gx.rows() {
            m = m.max(vecmath::norm(row));
        }

        let y = region.sample(&mut rng);
        let z = region.sample(&mut rng);
        let d = vecmath::dist(&y, &z);
        if d < 1e-12 {
            continue;
        }
        let gy = problem.jacobian(&y)?;
        let gz = problem.jacobian(&z)?;
        for (ry, rz) in gy.rows().zip(gz.rows()) {
            l = l.max(vecmath::dist(ry, rz) / d);
        }
    }
    Ok(RegionConstants { l, m, samples: k })
}

#[cfg(test)]
mod tests;
