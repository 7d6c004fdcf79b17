//! Finitely supported probability laws on the real line.
//!
//! The CDF is right-continuous, `F(x) = P(X <= x)`, and the quantile is its
//! left-continuous generalised inverse `Q(t) = inf { x : F(x) >= t }` on
//! `(0, 1]`. Most distances here are computed exactly by sweeping the merged
//! cumulative-weight breakpoints of two laws: between consecutive breakpoints
//! both quantile functions are constant.

mod cantor;
mod coupling;
mod distance;
mod gini;
mod levy;

pub use cantor::{cantor_phi, cantor_phi_ratio, cantor_quantile, DEFAULT_CANTOR_DIGITS};
pub use coupling::{
    antimonotone_coupling, frechet_1957, frechet_1957_distance, frechet_hoeffding_bounds,
    hoeffding_bounds_from_margins, ky_fan_levy, monotone_coupling, monotone_map, same_reduced_distance, Coupling1D,
    Frechet1957,
};
pub use distance::{kolmogorov, w1_cdf_area, w_infinity, wasserstein_p};
pub use gini::gini_index;
pub use levy::{levy_1950_def1, levy_1950_def2, CdfGraph, PointMetric};

use crate::curve::Polyline;
use crate::{Error, Result};

/// Weight sums within this distance of one are renormalised.
pub(crate) const RENORMALIZE_TOL: f64 = 1e-9;
/// Cumulative levels closer than this are treated as the same breakpoint.
const LEVEL_SNAP: f64 = 1e-12;

/// A probability law with finitely many atoms.
#[derive(Debug, Clone, PartialEq)]
pub struct Law1D {
    atoms: Vec<f64>,
    weights: Vec<f64>,
    cum: Vec<f64>,
}

/// Mean and root-mean-square deviation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments {
    pub mean: f64,
    pub sd: f64,
}

pub(crate) fn normalize_weights(weights: &mut [f64]) -> Result<()> {
    if weights.iter().any(|w| !(w.is_finite() && *w > 0.0)) {
        return Err(Error::InvalidWeights("weights must be finite and > 0".into()));
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > RENORMALIZE_TOL {
        return Err(Error::InvalidWeights(format!("weights sum to {total}, not 1")));
    }
    if total != 1.0 {
        weights.iter_mut().for_each(|w| *w /= total);
    }
    Ok(())
}

fn cumulative(weights: &[f64]) -> Vec<f64> {
    let mut acc = 0.0;
    let mut cum: Vec<f64> = weights
        .iter()
        .map(|w| {
            acc += w;
            acc.min(1.0)
        })
        .collect();
    if let Some(last) = cum.last_mut() {
        *last = 1.0;
    }
    cum
}

impl Law1D {
    /// Builds a law from strictly increasing atoms and positive weights.
    ///
    /// Weights summing to within `1e-9` of one are renormalised; anything
    /// further off is rejected.
    pub fn new(atoms: Vec<f64>, mut weights: Vec<f64>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::Empty("law atoms"));
        }
        if atoms.len() != weights.len() {
            return Err(Error::LengthMismatch {
                left: atoms.len(),
                right: weights.len(),
            });
        }
        if atoms.iter().any(|a| !a.is_finite()) {
            return Err(Error::NonFinite("law atoms"));
        }
        if atoms.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidLaw("atoms must be strictly increasing".into()));
        }
        normalize_weights(&mut weights)?;
        let cum = cumulative(&weights);
        Ok(Law1D { atoms, weights, cum })
    }

    /// Builds a law from `(atom, weight)` pairs in any order, merging equal atoms.
    pub fn from_weighted(pairs: impl IntoIterator<Item = (f64, f64)>) -> Result<Self> {
        let mut pairs: Vec<(f64, f64)> = pairs.into_iter().collect();
        if pairs.iter().any(|(a, _)| !a.is_finite()) {
            return Err(Error::NonFinite("law atoms"));
        }
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut atoms: Vec<f64> = Vec::with_capacity(pairs.len());
        let mut weights: Vec<f64> = Vec::with_capacity(pairs.len());
        for (a, w) in pairs {
            if atoms.last() == Some(&a) {
                *weights.last_mut().unwrap() += w;
            } else {
                atoms.push(a);
                weights.push(w);
            }
        }
        Law1D::new(atoms, weights)
    }

    /// Empirical law of a sample: uniform weights, equal values merged.
    pub fn from_samples(values: &[f64]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Empty("sample"));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("sample"));
        }
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        let n = sorted.len() as f64;
        let mut atoms = Vec::new();
        let mut counts: Vec<usize> = Vec::new();
        for v in sorted {
            // -0.0 and 0.0 merge
            if atoms.last() == Some(&v) {
                *counts.last_mut().unwrap() += 1;
            } else {
                atoms.push(v);
                counts.push(1);
            }
        }
        let weights = counts.iter().map(|&c| c as f64 / n).collect();
        let mut seen = 0;
        let cum = counts
            .iter()
            .map(|&c| {
                seen += c;
                seen as f64 / n
            })
            .collect();
        Ok(Law1D { atoms, weights, cum })
    }

    /// Point mass at `x`.
    pub fn dirac(x: f64) -> Result<Self> {
        Law1D::new(vec![x], vec![1.0])
    }

    /// Uniform law on the given distinct values.
    pub fn uniform(values: &[f64]) -> Result<Self> {
        let w = 1.0 / values.len().max(1) as f64;
        Law1D::from_weighted(values.iter().map(|&v| (v, w)))
    }

    pub fn atoms(&self) -> &[f64] {
        &self.atoms
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Cumulative weights; the last entry is exactly one.
    pub fn cumulative(&self) -> &[f64] {
        &self.cum
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `P(X <= x)`.
    pub fn cdf(&self, x: f64) -> f64 {
        let k = self.atoms.partition_point(|&a| a <= x);
        if k == 0 {
            0.0
        } else {
            self.cum[k - 1]
        }
    }

    /// `P(X < x)`.
    pub fn cdf_left(&self, x: f64) -> f64 {
        let k = self.atoms.partition_point(|&a| a < x);
        if k == 0 {
            0.0
        } else {
            self.cum[k - 1]
        }
    }

    /// Left-continuous quantile on `(0, 1]`.
    pub fn quantile(&self, t: f64) -> Result<f64> {
        if !(t > 0.0 && t <= 1.0) {
            return Err(Error::param("t", "quantile level must lie in (0, 1]"));
        }
        let k = self.cum.partition_point(|&c| c < t);
        Ok(self.atoms[k.min(self.atoms.len() - 1)])
    }

    pub fn mean(&self) -> f64 {
        self.atoms.iter().zip(&self.weights).map(|(a, w)| a * w).sum()
    }

    pub fn moments(&self) -> Moments {
        let mean = self.mean();
        let var: f64 = self
            .atoms
            .iter()
            .zip(&self.weights)
            .map(|(a, w)| w * (a - mean) * (a - mean))
            .sum();
        Moments { mean, sd: var.sqrt() }
    }

    /// Law of `scale * X + shift` (scale > 0).
    pub fn affine(&self, scale: f64, shift: f64) -> Result<Self> {
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(Error::param("scale", "must be finite and > 0"));
        }
        Law1D::new(
            self.atoms.iter().map(|a| scale * a + shift).collect(),
            self.weights.clone(),
        )
    }
}

/// Pieces `(i, j, dt)` of the merged quantile sweep: on a level interval of
/// length `dt` the quantiles are `a.atoms[i]` and `b.atoms[j]`.
pub(crate) fn quantile_sweep(a: &Law1D, b: &Law1D) -> Vec<(usize, usize, f64)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut prev = 0.0;
    while i < a.len() && j < b.len() {
        let (ca, cb) = (a.cum[i], b.cum[j]);
        let snapped = (ca - cb).abs() <= LEVEL_SNAP;
        let t = if snapped { ca.max(cb) } else { ca.min(cb) };
        if t > prev {
            out.push((i, j, t - prev));
            prev = t;
        }
        if snapped || ca < cb {
            i += 1;
        }
        if snapped || cb < ca {
            j += 1;
        }
    }
    out
}

/// Planar polyline through `(t_i, Q(t_i))` at the midpoints `t_i = (i - 1/2) / n`.
pub fn quantile_graph(law: &Law1D, n: usize) -> Result<Polyline> {
    if n < 2 {
        return Err(Error::param("n", "must be >= 2"));
    }
    let rows = (1..=n)
        .map(|i| {
            let t = (i as f64 - 0.5) / n as f64;
            law.quantile(t).map(|q| [t, q])
        })
        .collect::<Result<Vec<_>>>()?;
    Polyline::from_rows(rows)
}
