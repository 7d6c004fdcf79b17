use crate::{Error, Result};

/// Metric on real sequences `Σ (1/n!) · |xₙ − yₙ| / (1 + |xₙ − yₙ|)`,
/// truncated after `p` terms.
///
/// Returns the truncated value and `Σ_{n>p} 1/n!`, which bounds the
/// omitted tail since every summand is below `1/n!`.
pub fn sequence_metric(x: &[f64], y: &[f64], p: usize) -> Result<(f64, f64)> {
    if p < 1 {
        return Err(Error::param("p", "must be >= 1"));
    }
    if x.len() < p || y.len() < p {
        return Err(Error::param("p", format!("sequences need at least {p} terms")));
    }
    let mut value = 0.0;
    let mut factor = 1.0;
    for n in 1..=p {
        factor /= n as f64;
        let d = (x[n - 1] - y[n - 1]).abs();
        if d.is_nan() {
            return Err(Error::NonFinite("sequence"));
        }
        // an infinite gap contributes the full weight
        value += factor * if d.is_infinite() { 1.0 } else { d / (1.0 + d) };
    }
    let mut tail = 0.0;
    let mut term = factor;
    for n in p + 1.. {
        term /= n as f64;
        if term < f64::EPSILON * tail {
            break;
        }
        tail += term;
    }
    Ok((value, tail))
}
