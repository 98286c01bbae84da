//! Multiobjective steepest descent.
//!
//! For a smooth vector objective `f = (f_1, ..., f_m)` the steepest descent
//! direction at `x` is
//!
//! ```text
//! L(x) = argmin_v  max_i <grad f_i(x), v> + |v|^2 / 2,
//! ```
//!
//! and `-L(x)` is the minimum-norm element of the convex hull of the
//! gradients. This crate computes `L(x)` through that dual (a small QP over
//! the unit simplex solved by Wolfe's minimum-norm-point method), runs
//! Armijo-backtracked multiobjective descent, and ships a "continuity lab"
//! that measures how `L` varies between nearby points: it is Hölder
//! continuous with exponent 1/2 on bounded regions, with constant
//! `sqrt(2 L M)` in the gradient Lipschitz constant `L` and gradient norm
//! bound `M`, and the exponent 1/2 is sharp already for polynomial
//! objectives.

mod error;
mod matrix;
mod rng;
mod vecmath;

pub mod continuity;
pub mod descent;
pub mod direction;
pub mod minnorm;
pub mod problems;

pub use error::{Error, Result};
pub use matrix::GradientMatrix;
pub use rng::{seeded_rng, ChaCha8Rng};
