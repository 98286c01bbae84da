//! Small dense-vector helpers used throughout the crate.

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm_sq(a: &[f64]) -> f64 {
    dot(a, a)
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    norm_sq(a).sqrt()
}

pub(crate) fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// a + t * d
pub(crate) fn add_scaled(a: &[f64], t: f64, d: &[f64]) -> Vec<f64> {
    debug_assert_eq!(a.len(), d.len());
    a.iter().zip(d).map(|(x, y)| x + t * y).collect()
}

pub(crate) fn dist(a: &[f64], b: &[f64]) -> f64 {
    norm(&sub(a, b))
}

pub(crate) fn all_finite(a: &[f64]) -> bool {
    a.iter().all(|x| x.is_finite())
}
