//! Polynomial objectives: sums of monomials with exact term-by-term gradients.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One monomial `coeff * prod_j x_j^exponents[j]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub coeff: f64,
    pub exponents: Vec<u32>,
}

/// A polynomial in `n` variables.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polynomial {
    pub terms: Vec<Term>,
}

impl Polynomial {
    pub fn new(terms: Vec<Term>) -> Self {
        Polynomial { terms }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        for t in &self.terms {
            if t.exponents.len() != n {
                return Err(Error::invalid(format!(
                    "term has {} exponents, expected {n}",
                    t.exponents.len()
                )));
            }
            if !t.coeff.is_finite() {
                return Err(Error::invalid("term coefficient must be finite"));
            }
        }
        Ok(())
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|t| {
                t.coeff
                    * t.exponents
                        .iter()
                        .zip(x)
                        .map(|(e, xi)| xi.powi(*e as i32))
                        .product::<f64>()
            })
            .sum()
    }

    pub fn grad(&self, x: &[f64]) -> Vec<f64> {
        let n = x.len();
        let mut g = vec![0.0; n];
        for t in &self.terms {
            for k in 0..n {
                let ek = t.exponents[k];
                if ek == 0 {
                    continue;
                }
                let mut p = t.coeff * ek as f64 * x[k].powi(ek as i32 - 1);
                for (j, (e, xj)) in t.exponents.iter().zip(x).enumerate() {
                    if j != k {
                        p *= xj.powi(*e as i32);
                    }
                }
                g[k] += p;
            }
        }
        g
    }
}
