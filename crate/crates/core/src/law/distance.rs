use super::{quantile_sweep, Law1D};
use crate::{Error, Result};

/// `W_p` as the `L^p` distance between quantile functions, exact for finite laws.
pub fn wasserstein_p(a: &Law1D, b: &Law1D, p: f64) -> Result<f64> {
    if !(p >= 1.0 && p.is_finite()) {
        return Err(Error::param("p", "must be finite and >= 1"));
    }
    let pieces = quantile_sweep(a, b);
    let (xa, xb) = (a.atoms(), b.atoms());
    if p == 1.0 {
        return Ok(pieces.iter().map(|&(i, j, dt)| dt * (xa[i] - xb[j]).abs()).sum());
    }
    let total: f64 = pieces
        .iter()
        .map(|&(i, j, dt)| dt * (xa[i] - xb[j]).abs().powf(p))
        .sum();
    Ok(total.powf(1.0 / p))
}

/// `W_1` as the area between the two CDFs.
pub fn w1_cdf_area(a: &Law1D, b: &Law1D) -> f64 {
    let mut area = 0.0;
    for_each_union_step(a, b, |_, f, g, width| area += (f - g).abs() * width);
    area
}

/// `W_∞`: the sup distance between quantile functions.
pub fn w_infinity(a: &Law1D, b: &Law1D) -> f64 {
    quantile_sweep(a, b)
        .iter()
        .map(|&(i, j, _)| (a.atoms()[i] - b.atoms()[j]).abs())
        .fold(0.0, f64::max)
}

/// Kolmogorov distance `sup_x |F(x) - G(x)|`.
///
/// Both CDFs are step functions jumping only at atoms, so the supremum is
/// attained at some atom of the union (left limits repeat earlier values).
pub fn kolmogorov(a: &Law1D, b: &Law1D) -> f64 {
    let mut best: f64 = 0.0;
    for_each_union_step(a, b, |_, f, g, _| best = best.max((f - g).abs()));
    best
}

/// Walks the sorted union of atoms. For each union point `z` calls
/// `f(z, F(z), G(z), width)` where `width` is the gap to the next union
/// point (zero at the last one).
fn for_each_union_step(a: &Law1D, b: &Law1D, mut f: impl FnMut(f64, f64, f64, f64)) {
    let (xa, xb) = (a.atoms(), b.atoms());
    let (ca, cb) = (a.cumulative(), b.cumulative());
    let (mut i, mut j) = (0, 0);
    let (mut fa, mut fb) = (0.0, 0.0);
    while i < xa.len() || j < xb.len() {
        let z = match (xa.get(i), xb.get(j)) {
            (Some(&x), Some(&y)) => x.min(y),
            (Some(&x), None) => x,
            (None, Some(&y)) => y,
            (None, None) => unreachable!(),
        };
        if xa.get(i) == Some(&z) {
            fa = ca[i];
            i += 1;
        }
        if xb.get(j) == Some(&z) {
            fb = cb[j];
            j += 1;
        }
        let next = match (xa.get(i), xb.get(j)) {
            (Some(&x), Some(&y)) => Some(x.min(y)),
            (Some(&x), None) => Some(x),
            (None, Some(&y)) => Some(y),
            (None, None) => None,
        };
        f(z, fa, fb, next.map_or(0.0, |n| n - z));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(v: &[f64]) -> Law1D {
        Law1D::uniform(v).unwrap()
    }

    fn d(x: f64) -> Law1D {
        Law1D::dirac(x).unwrap()
    }

    #[test]
    fn wasserstein_examples() {
        assert_eq!(wasserstein_p(&d(0.0), &d(3.0), 2.0).unwrap(), 3.0);
        assert_eq!(wasserstein_p(&u(&[0.0, 1.0]), &u(&[1.0, 2.0]), 1.0).unwrap(), 1.0);
        assert!(wasserstein_p(&d(0.0), &d(1.0), 0.5).is_err());
        assert!(wasserstein_p(&d(0.0), &d(1.0), f64::INFINITY).is_err());
    }

    #[test]
    fn sqrt_quantile_law() {
        // Q(t) = t vs Q(t) = sqrt(t): W1 = ∫ (sqrt t - t) dt = 1/6
        let n = 10_000;
        let ts: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) / n as f64).collect();
        let a = Law1D::from_samples(&ts).unwrap();
        let b = Law1D::from_samples(&ts.iter().map(|t| t.sqrt()).collect::<Vec<_>>()).unwrap();
        let w = wasserstein_p(&a, &b, 1.0).unwrap();
        assert!((w - 1.0 / 6.0).abs() < 1e-3, "{w}");
    }

    #[test]
    fn cdf_area_examples() {
        let l = u(&[0.0, 2.0, 5.0]);
        assert_eq!(w1_cdf_area(&l, &l), 0.0);
        assert_eq!(w1_cdf_area(&d(0.0), &d(1.0)), 1.0);
        let (a, b) = (u(&[0.0, 1.0]), u(&[0.0, 1.0, 2.0]));
        let w = wasserstein_p(&a, &b, 1.0).unwrap();
        assert!((w1_cdf_area(&a, &b) - w).abs() < 1e-12);
        // hand value: |1/2-1/3| on [0,1) + |1-2/3| on [1,2)
        assert!((w - 0.5).abs() < 1e-15);
    }

    #[test]
    fn w_infinity_examples() {
        assert_eq!(w_infinity(&d(0.0), &d(3.0)), 3.0);
        assert_eq!(w_infinity(&u(&[0.0, 1.0]), &u(&[0.0, 2.0])), 1.0);
        let l = u(&[1.0, 4.0]);
        assert_eq!(w_infinity(&l, &l), 0.0);
    }

    #[test]
    fn kolmogorov_examples() {
        assert_eq!(kolmogorov(&d(0.0), &d(1.0)), 1.0);
        let k = kolmogorov(&u(&[0.0, 1.0]), &u(&[0.0, 1.0, 2.0]));
        assert!((k - 1.0 / 3.0).abs() < 1e-15);
        let l = u(&[1.0, 4.0]);
        assert_eq!(kolmogorov(&l, &l), 0.0);
    }
}
