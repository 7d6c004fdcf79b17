use crate::{Error, Result};

/// Gini's dissimilarity index `((1/n) Σ |a_h - b_h|^α)^(1/α)` of two sorted
/// samples of equal size.
///
/// Pairing the order statistics is the monotone coupling of the two
/// empirical laws, so this equals their `W_α` distance.
pub fn gini_index(a: &[f64], b: &[f64], alpha: f64) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    if a.is_empty() {
        return Err(Error::Empty("gini sample"));
    }
    if !(alpha >= 1.0 && alpha.is_finite()) {
        return Err(Error::param("alpha", "must be finite and >= 1"));
    }
    if a.iter().chain(b).any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("gini sample"));
    }
    let sorted = |s: &[f64]| s.windows(2).all(|w| w[0] <= w[1]);
    if !sorted(a) || !sorted(b) {
        return Err(Error::NotSorted);
    }
    let n = a.len() as f64;
    let total: f64 = a.iter().zip(b).map(|(x, y)| (x - y).abs().powf(alpha) / n).sum();
    Ok(total.powf(1.0 / alpha))
}
