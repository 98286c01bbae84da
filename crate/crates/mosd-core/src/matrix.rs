//! The stacked-gradient matrix passed between the problem layer and the
//! dual solver.

use crate::error::{Error, Result};
use crate::vecmath;

/// The gradients of the `m` objectives at one point, stored as `m` rows of
/// length `n` in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct GradientMatrix {
    m: usize,
    n: usize,
    data: Vec<f64>,
}

impl GradientMatrix {
    /// Builds a matrix from per-objective gradient rows. All rows must have
    /// the same length and the matrix must have at least one row.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::invalid("gradient matrix needs at least one row"));
        }
        let n = rows[0].len();
        if n == 0 {
            return Err(Error::invalid("gradient rows must be non-empty"));
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::invalid("gradient rows have mismatched lengths"));
        }
        let mut data = Vec::with_capacity(rows.len() * n);
        for r in &rows {
            data.extend_from_slice(r);
        }
        Ok(GradientMatrix {
            m: rows.len(),
            n,
            data,
        })
    }

    /// Number of rows (objectives).
    pub fn num_rows(&self) -> usize {
        self.m
    }

    /// Row length (ambient dimension).
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.n)
    }

    pub fn is_finite(&self) -> bool {
        vecmath::all_finite(&self.data)
    }

    /// The convex combination of the rows by `weights`.
    pub fn combine(&self, weights: &[f64]) -> Vec<f64> {
        debug_assert_eq!(weights.len(), self.m);
        let mut out = vec![0.0; self.n];
        for (w, row) in weights.iter().zip(self.rows()) {
            for (o, g) in out.iter_mut().zip(row) {
                *o += w * g;
            }
        }
        out
    }
}
