//! Divergences between finitely supported laws in `R^d`.
//!
//! Logarithms are natural throughout. Expectations are exact sums over the
//! supports, never sample estimates.

mod kernel;
mod sequence;
mod sinkhorn;

use std::collections::HashMap;

pub use kernel::{energy_distance, mmd, KernelSpec};
pub use sequence::sequence_metric;
pub use sinkhorn::{entropic_ot, sinkhorn_divergence, SinkhornConfig};

use crate::law::RENORMALIZE_TOL;
use crate::{Error, Result};

/// A law on finitely many distinct points of `R^d`.
///
/// Zero-weight atoms are accepted and dropped, so the stored support is
/// exactly the set of points with positive mass.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteLawD {
    dim: usize,
    support: Vec<Vec<f64>>,
    weights: Vec<f64>,
}

/// Bit pattern of a point, with `-0.0` folded onto `0.0`.
fn point_key(x: &[f64]) -> Vec<u64> {
    x.iter().map(|v| (v + 0.0).to_bits()).collect()
}

impl DiscreteLawD {
    pub fn new(support: Vec<Vec<f64>>, weights: Vec<f64>) -> Result<Self> {
        if support.len() != weights.len() {
            return Err(Error::LengthMismatch {
                left: support.len(),
                right: weights.len(),
            });
        }
        let dim = support.first().ok_or(Error::Empty("support"))?.len();
        if dim == 0 {
            return Err(Error::Empty("support point"));
        }
        let mut seen = HashMap::new();
        for x in &support {
            if x.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: x.len(),
                });
            }
            if x.iter().any(|v| !v.is_finite()) {
                return Err(Error::NonFinite("support"));
            }
            if seen.insert(point_key(x), ()).is_some() {
                return Err(Error::InvalidLaw(format!("repeated support point {x:?}")));
            }
        }
        if weights.iter().any(|w| !(w.is_finite() && *w >= 0.0)) {
            return Err(Error::InvalidWeights("weights must be finite and >= 0".into()));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > RENORMALIZE_TOL {
            return Err(Error::InvalidWeights(format!("weights sum to {total}, not 1")));
        }
        let (support, weights): (Vec<_>, Vec<_>) = support
            .into_iter()
            .zip(weights)
            .filter(|(_, w)| *w > 0.0)
            .map(|(x, w)| (x, w / total))
            .unzip();
        Ok(DiscreteLawD { dim, support, weights })
    }

    /// Equal weights on the given points.
    pub fn uniform(support: Vec<Vec<f64>>) -> Result<Self> {
        let n = support.len();
        DiscreteLawD::new(support, vec![1.0 / n.max(1) as f64; n])
    }

    pub fn dirac(x: Vec<f64>) -> Result<Self> {
        DiscreteLawD::new(vec![x], vec![1.0])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn support(&self) -> &[Vec<f64>] {
        &self.support
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn mean(&self) -> Vec<f64> {
        let mut m = vec![0.0; self.dim];
        for (x, w) in self.support.iter().zip(&self.weights) {
            m.iter_mut().zip(x).for_each(|(mi, xi)| *mi += w * xi);
        }
        m
    }

    /// Covariance of the law itself (weights, not an `n − 1` sample estimate),
    /// row-major `d × d`.
    pub fn covariance(&self) -> Vec<f64> {
        let d = self.dim;
        let m = self.mean();
        let mut c = vec![0.0; d * d];
        for (x, w) in self.support.iter().zip(&self.weights) {
            for i in 0..d {
                for j in 0..d {
                    c[i * d + j] += w * (x[i] - m[i]) * (x[j] - m[j]);
                }
            }
        }
        c
    }
}

pub(crate) fn check_same_dim(p: &DiscreteLawD, q: &DiscreteLawD) -> Result<()> {
    if p.dim != q.dim {
        return Err(Error::DimensionMismatch {
            expected: p.dim,
            found: q.dim,
        });
    }
    Ok(())
}

/// Masses `(p(x), q(x))` over the union of supports, in first-seen order.
/// Points of different dimension never coincide.
fn union_masses(p: &DiscreteLawD, q: &DiscreteLawD) -> Vec<(f64, f64)> {
    let mut index: HashMap<Vec<u64>, usize> = HashMap::new();
    let mut out = Vec::with_capacity(p.len() + q.len());
    for (x, &w) in p.support.iter().zip(&p.weights) {
        index.insert(point_key(x), out.len());
        out.push((w, 0.0));
    }
    for (y, &w) in q.support.iter().zip(&q.weights) {
        let key = point_key(y);
        match index.get(&key) {
            Some(&k) if p.dim == q.dim => out[k].1 = w,
            _ => out.push((0.0, w)),
        }
    }
    out
}

/// Total variation `½ Σ |p(x) − q(x)|`.
pub fn total_variation(p: &DiscreteLawD, q: &DiscreteLawD) -> f64 {
    let s: f64 = union_masses(p, q).iter().map(|(a, b)| (a - b).abs()).sum();
    (0.5 * s).min(1.0)
}

/// Kullback–Leibler divergence `Σ p log(p / q)`.
pub fn kl(p: &DiscreteLawD, q: &DiscreteLawD) -> Result<f64> {
    let mut total = 0.0;
    for (a, b) in union_masses(p, q) {
        if a > 0.0 {
            if b == 0.0 {
                return Err(Error::NotAbsolutelyContinuous);
            }
            total += a * (a / b).ln();
        }
    }
    Ok(total.max(0.0))
}

/// Jensen–Shannon divergence against the midpoint mixture; at most `ln 2`.
pub fn js(p: &DiscreteLawD, q: &DiscreteLawD) -> f64 {
    let mut total = 0.0;
    for (a, b) in union_masses(p, q) {
        let m = 0.5 * (a + b);
        if a > 0.0 {
            total += 0.5 * a * (a / m).ln();
        }
        if b > 0.0 {
            total += 0.5 * b * (b / m).ln();
        }
    }
    total.clamp(0.0, std::f64::consts::LN_2)
}

/// Bhattacharyya coefficient `Σ √(p q)`, in `[0, 1]`.
pub fn bhattacharyya_coeff(p: &DiscreteLawD, q: &DiscreteLawD) -> f64 {
    let bc: f64 = union_masses(p, q).iter().map(|(a, b)| (a * b).sqrt()).sum();
    bc.min(1.0)
}

/// Hellinger distance `√(1 − BC)`.
pub fn hellinger(p: &DiscreteLawD, q: &DiscreteLawD) -> f64 {
    (1.0 - bhattacharyya_coeff(p, q)).max(0.0).sqrt()
}

/// Bhattacharyya distance `−ln BC`; `+∞` for disjoint supports.
pub fn bhattacharyya_distance(p: &DiscreteLawD, q: &DiscreteLawD) -> f64 {
    let bc = bhattacharyya_coeff(p, q);
    if bc == 0.0 {
        f64::INFINITY
    } else {
        (-bc.ln()).max(0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn law(points: &[f64], w: &[f64]) -> DiscreteLawD {
        DiscreteLawD::new(points.iter().map(|&x| vec![x]).collect(), w.to_vec()).unwrap()
    }

    /// `sup_A |p(A) − q(A)|` by enumerating every subset of the union support.
    fn tv_by_events(p: &DiscreteLawD, q: &DiscreteLawD) -> f64 {
        let m = union_masses(p, q);
        let mut best: f64 = 0.0;
        for mask in 0u32..(1 << m.len()) {
            let (mut a, mut b) = (0.0, 0.0);
            for (k, (pa, qb)) in m.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    a += pa;
                    b += qb;
                }
            }
            best = best.max((a - b).abs());
        }
        best
    }

    #[test]
    fn construction() {
        assert!(DiscreteLawD::new(vec![vec![0.0], vec![0.0]], vec![0.5, 0.5]).is_err());
        assert!(DiscreteLawD::new(vec![vec![0.0], vec![1.0, 2.0]], vec![0.5, 0.5]).is_err());
        assert!(DiscreteLawD::new(vec![vec![0.0]], vec![0.7]).is_err());
        let l = law(&[0.0, 1.0], &[1.0, 0.0]);
        assert_eq!(l.len(), 1);
        let l = DiscreteLawD::uniform(vec![vec![0.0, 0.0], vec![2.0, 0.0]]).unwrap();
        assert_eq!(l.mean(), vec![1.0, 0.0]);
        assert_eq!(l.covariance(), vec![1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn tv_examples() {
        let p = law(&[0.0, 1.0], &[0.5, 0.5]);
        assert_eq!(total_variation(&p, &p), 0.0);
        assert_eq!(total_variation(&p, &law(&[2.0, 3.0], &[0.5, 0.5])), 1.0);
        let q = law(&[0.0, 1.0], &[0.2, 0.8]);
        assert!((total_variation(&p, &q) - 0.3).abs() < 1e-15);
    }

    #[test]
    fn tv_equals_event_supremum() {
        let mut s = 11u64;
        let mut next = || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (s >> 33) as f64 / (1u64 << 31) as f64
        };
        for _ in 0..50 {
            let mut w: Vec<f64> = (0..6).map(|_| next() + 0.01).collect();
            let t: f64 = w.iter().sum();
            w.iter_mut().for_each(|x| *x /= t);
            let p = law(&[0.0, 1.0, 2.0, 3.0, 4.0, 5.0], &w);
            let mut v: Vec<f64> = (0..5).map(|_| next() + 0.01).collect();
            let t: f64 = v.iter().sum();
            v.iter_mut().for_each(|x| *x /= t);
            let q = law(&[3.0, 4.0, 5.0, 6.0, 7.0], &v);
            assert!((total_variation(&p, &q) - tv_by_events(&p, &q)).abs() < 1e-12);
        }
    }

    #[test]
    fn kl_js_examples() {
        let p = law(&[0.0, 1.0], &[0.5, 0.5]);
        assert_eq!(kl(&p, &p).unwrap(), 0.0);
        assert_eq!(js(&p, &p), 0.0);
        let q = law(&[0.0, 1.0], &[0.25, 0.75]);
        let expect = 2f64.ln() - 0.5 * 3f64.ln();
        assert!((kl(&p, &q).unwrap() - expect).abs() < 1e-15);
        let r = law(&[5.0], &[1.0]);
        assert!((js(&p, &r) - 2f64.ln()).abs() < 1e-15);
        assert_eq!(kl(&p, &r), Err(Error::NotAbsolutelyContinuous));
    }

    #[test]
    fn hellinger_examples() {
        let p = law(&[0.0, 1.0], &[0.5, 0.5]);
        assert_eq!(hellinger(&p, &p), 0.0);
        assert_eq!(bhattacharyya_coeff(&p, &p), 1.0);
        assert_eq!(bhattacharyya_distance(&p, &p), 0.0);
        let r = law(&[5.0], &[1.0]);
        assert_eq!(hellinger(&p, &r), 1.0);
        assert_eq!(bhattacharyya_coeff(&p, &r), 0.0);
        assert_eq!(bhattacharyya_distance(&p, &r), f64::INFINITY);
        let a = law(&[0.0, 1.0], &[1.0, 0.0]);
        let h = hellinger(&a, &p);
        assert!((h - (1.0 - 0.5f64.sqrt()).sqrt()).abs() < 1e-15);
        let bc = bhattacharyya_coeff(&a, &p);
        assert!((h * h + bc - 1.0).abs() < 1e-12);
    }
}
