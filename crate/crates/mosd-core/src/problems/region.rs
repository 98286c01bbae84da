//! Convex bounded regions: axis-aligned boxes and Euclidean balls.

use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng;
use crate::vecmath;

/// A convex, bounded region with nonempty interior. Problem domains and the
/// sets probed by the continuity lab are both of this type.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Region {
    Box { lower: Vec<f64>, upper: Vec<f64> },
    Ball { center: Vec<f64>, radius: f64 },
}

impl Region {
    pub fn bounding_box(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        let region = Region::Box { lower, upper };
        region.validate()?;
        Ok(region)
    }

    pub fn ball(center: Vec<f64>, radius: f64) -> Result<Self> {
        let region = Region::Ball { center, radius };
        region.validate()?;
        Ok(region)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Region::Box { lower, upper } => {
                if lower.is_empty() || lower.len() != upper.len() {
                    return Err(Error::invalid(
                        "box bounds must be non-empty and equal length",
                    ));
                }
                if !vecmath::all_finite(lower) || !vecmath::all_finite(upper) {
                    return Err(Error::invalid("box bounds must be finite"));
                }
                if lower.iter().zip(upper).any(|(l, u)| l >= u) {
                    return Err(Error::invalid("box intervals need lower < upper"));
                }
            }
            Region::Ball { center, radius } => {
                if center.is_empty() {
                    return Err(Error::invalid("ball center must be non-empty"));
                }
                if !vecmath::all_finite(center) || !radius.is_finite() {
                    return Err(Error::invalid("ball center and radius must be finite"));
                }
                if *radius <= 0.0 {
                    return Err(Error::invalid("ball radius must be positive"));
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        match self {
            Region::Box { lower, .. } => lower.len(),
            Region::Ball { center, .. } => center.len(),
        }
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        if x.len() != self.dim() {
            return false;
        }
        match self {
            Region::Box { lower, upper } => x
                .iter()
                .zip(lower.iter().zip(upper))
                .all(|(xi, (l, u))| *l <= *xi && *xi <= *u),
            Region::Ball { center, radius } => vecmath::dist(x, center) <= *radius,
        }
    }

    /// Whether `inner` lies entirely inside `self`.
    pub fn contains_region(&self, inner: &Region) -> bool {
        if self.dim() != inner.dim() {
            return false;
        }
        match inner {
            Region::Box { lower, upper } => match self {
                Region::Box { .. } => {
                    // corner containment reduces to interval containment
                    self.contains(lower) && self.contains(upper)
                }
                Region::Ball { center, radius } => {
                    // farthest corner in closed form, no 2^n enumeration
                    let worst: f64 = lower
                        .iter()
                        .zip(upper)
                        .zip(center)
                        .map(|((l, u), c)| (l - c).powi(2).max((u - c).powi(2)))
                        .sum();
                    worst.sqrt() <= *radius
                }
            },
            Region::Ball { center, radius } => match self {
                Region::Ball {
                    center: oc,
                    radius: or,
                } => vecmath::dist(center, oc) + radius <= *or,
                Region::Box { lower, upper } => center
                    .iter()
                    .zip(lower.iter().zip(upper))
                    .all(|(c, (l, u))| c - radius >= *l && c + radius <= *u),
            },
        }
    }

    /// Uniform draw from the region.
    pub fn sample(&self, rng: &mut ChaCha8Rng) -> Vec<f64> {
        match self {
            Region::Box { lower, upper } => lower
                .iter()
                .zip(upper)
                .map(|(l, u)| rng::uniform(rng, *l, *u))
                .collect(),
            Region::Ball { center, radius } => {
                // isotropic direction, radius by inverse-cdf of r^n
                let n = center.len();
                let dir = rng::unit_vector(rng, n);
                let r = radius * rng::uniform(rng, 0.0, 1.0).powf(1.0 / n as f64);
                center.iter().zip(dir).map(|(c, d)| c + r * d).collect()
            }
        }
    }

    /// sup over the region of the Euclidean norm of x.
    pub fn max_point_norm(&self) -> f64 {
        match self {
            Region::Box { lower, upper } => lower
                .iter()
                .zip(upper)
                .map(|(l, u)| l.abs().max(u.abs()).powi(2))
                .sum::<f64>()
                .sqrt(),
            Region::Ball { center, radius } => vecmath::norm(center) + radius,
        }
    }
}
