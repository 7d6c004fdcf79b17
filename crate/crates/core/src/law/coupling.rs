use serde::{Deserialize, Serialize};

use super::{cumulative, normalize_weights, quantile_sweep, Law1D};
use crate::{Error, Result};

/// A joint law on finitely many pairs `(x, y)` with weights summing to one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Coupling1D {
    pairs: Vec<(f64, f64, f64)>,
}

impl Coupling1D {
    pub fn new(pairs: Vec<(f64, f64, f64)>) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::Empty("coupling"));
        }
        if pairs.iter().any(|(x, y, _)| !x.is_finite() || !y.is_finite()) {
            return Err(Error::NonFinite("coupling"));
        }
        let mut weights: Vec<f64> = pairs.iter().map(|p| p.2).collect();
        normalize_weights(&mut weights)?;
        let pairs = pairs.into_iter().zip(weights).map(|((x, y, _), w)| (x, y, w)).collect();
        Ok(Coupling1D { pairs })
    }

    /// The diagonal coupling of a law with itself.
    pub fn diagonal(law: &Law1D) -> Self {
        Coupling1D {
            pairs: law
                .atoms()
                .iter()
                .zip(law.weights())
                .map(|(&a, &w)| (a, a, w))
                .collect(),
        }
    }

    pub fn pairs(&self) -> &[(f64, f64, f64)] {
        &self.pairs
    }

    pub fn marginal_x(&self) -> Result<Law1D> {
        Law1D::from_weighted(self.pairs.iter().map(|&(x, _, w)| (x, w)))
    }

    pub fn marginal_y(&self) -> Result<Law1D> {
        Law1D::from_weighted(self.pairs.iter().map(|&(_, y, w)| (y, w)))
    }

    /// Joint CDF `H(x, y) = P(X <= x, Y <= y)`.
    pub fn joint_cdf(&self, x: f64, y: f64) -> f64 {
        self.pairs
            .iter()
            .filter(|&&(a, b, _)| a <= x && b <= y)
            .map(|p| p.2)
            .sum::<f64>()
            .min(1.0)
    }

    /// Expected `|X - Y|^alpha`.
    pub fn cost(&self, alpha: f64) -> Result<f64> {
        if !(alpha >= 1.0 && alpha.is_finite()) {
            return Err(Error::param("alpha", "must be finite and >= 1"));
        }
        Ok(self.pairs.iter().map(|&(x, y, w)| w * (x - y).abs().powf(alpha)).sum())
    }

    fn means(&self) -> (f64, f64) {
        self.pairs
            .iter()
            .fold((0.0, 0.0), |(a, b), &(x, y, w)| (a + w * x, b + w * y))
    }

    /// `(var X, var Y, cov(X, Y))`.
    fn second_moments(&self) -> (f64, f64, f64) {
        let (mx, my) = self.means();
        self.pairs.iter().fold((0.0, 0.0, 0.0), |(vx, vy, c), &(x, y, w)| {
            let (dx, dy) = (x - mx, y - my);
            (vx + w * dx * dx, vy + w * dy * dy, c + w * dx * dy)
        })
    }

    /// Correlation coefficient of the reduced variables.
    pub fn correlation(&self) -> Result<f64> {
        let (vx, vy, c) = self.second_moments();
        if vx <= 0.0 || vy <= 0.0 {
            return Err(Error::ZeroDeviation);
        }
        Ok((c / (vx.sqrt() * vy.sqrt())).clamp(-1.0, 1.0))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.pairs).expect("finite floats serialise")
    }
}

/// Couples equal quantile levels: `X = Q_F(U)`, `Y = Q_G(U)`.
///
/// Its joint CDF is the upper Fréchet–Hoeffding bound `min(F(x), G(y))`.
pub fn monotone_coupling(a: &Law1D, b: &Law1D) -> Coupling1D {
    let pairs = quantile_sweep(a, b)
        .into_iter()
        .map(|(i, j, w)| (a.atoms()[i], b.atoms()[j], w))
        .collect();
    Coupling1D { pairs }
}

/// Couples opposite levels: `X = Q_F(U)`, `Y = Q_G(1 - U)`.
///
/// Its joint CDF is the lower bound `max(F(x) + G(y) - 1, 0)`.
pub fn antimonotone_coupling(a: &Law1D, b: &Law1D) -> Coupling1D {
    let mut flipped = Law1D {
        atoms: b.atoms().iter().rev().map(|y| -y).collect(),
        weights: b.weights().iter().rev().copied().collect(),
        cum: Vec::new(),
    };
    flipped.cum = cumulative(&flipped.weights);
    let pairs = quantile_sweep(a, &flipped)
        .into_iter()
        .map(|(i, j, w)| (a.atoms()[i], -flipped.atoms()[j], w))
        .collect();
    Coupling1D { pairs }
}

/// `(H0, H1) = (max(F + G - 1, 0), min(F, G))` for given margin values.
pub fn hoeffding_bounds_from_margins(f: f64, g: f64) -> (f64, f64) {
    ((f + g - 1.0).max(0.0), f.min(g))
}

/// Fréchet–Hoeffding bounds on `H(x, y)` for any coupling of `a` and `b`.
pub fn frechet_hoeffding_bounds(a: &Law1D, b: &Law1D, x: f64, y: f64) -> (f64, f64) {
    hoeffding_bounds_from_margins(a.cdf(x), b.cdf(y))
}

/// Terms of the moment form of the quadratic law distance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frechet1957 {
    pub mean_a: f64,
    pub mean_b: f64,
    pub sd_a: f64,
    pub sd_b: f64,
    /// Largest attainable correlation; `None` when a marginal is a point mass.
    pub rho: Option<f64>,
    pub distance: f64,
}

/// Distance `sqrt((a - a')^2 + σ^2 - 2σσ'ρ + σ'^2)` with `ρ` the correlation
/// of the monotone coupling (the maximum over all couplings).
pub fn frechet_1957(a: &Law1D, b: &Law1D) -> Frechet1957 {
    let c = monotone_coupling(a, b);
    let (mean_a, mean_b) = c.means();
    let (va, vb, cov) = c.second_moments();
    let (sd_a, sd_b) = (va.sqrt(), vb.sqrt());
    let rho = (va > 0.0 && vb > 0.0).then(|| (cov / (sd_a * sd_b)).clamp(-1.0, 1.0));
    // σσ'ρ is the covariance of the monotone coupling
    let spread = (va + vb - 2.0 * cov).max(0.0);
    let dm = mean_a - mean_b;
    Frechet1957 {
        mean_a,
        mean_b,
        sd_a,
        sd_b,
        rho,
        distance: (dm * dm + spread).sqrt(),
    }
}

pub fn frechet_1957_distance(a: &Law1D, b: &Law1D) -> f64 {
    frechet_1957(a, b).distance
}

/// `sqrt((a - a')^2 + (σ - σ')^2)`, valid when the reduced laws
/// `(X - a) / σ` and `(Y - a') / σ'` coincide.
pub fn same_reduced_distance(a: &Law1D, b: &Law1D) -> Result<f64> {
    const TOL: f64 = 1e-9;
    let (ma, mb) = (a.moments(), b.moments());
    match (ma.sd > 0.0, mb.sd > 0.0) {
        (false, false) => return Ok((ma.mean - mb.mean).abs()),
        (true, true) => {}
        _ => return Err(Error::ReducedLawsDiffer),
    }
    if a.len() != b.len() {
        return Err(Error::ReducedLawsDiffer);
    }
    let same = a
        .atoms()
        .iter()
        .zip(b.atoms())
        .zip(a.weights().iter().zip(b.weights()))
        .all(|((x, y), (wx, wy))| {
            ((x - ma.mean) / ma.sd - (y - mb.mean) / mb.sd).abs() <= TOL && (wx - wy).abs() <= TOL
        });
    if !same {
        return Err(Error::ReducedLawsDiffer);
    }
    let (dm, ds) = (ma.mean - mb.mean, ma.sd - mb.sd);
    Ok((dm * dm + ds * ds).sqrt())
}

/// Monotone transport map `λ(x) = Q_G(F(x))` at an atom `x` of `a`.
pub fn monotone_map(a: &Law1D, b: &Law1D, x: f64) -> Result<f64> {
    if a.atoms().binary_search_by(|v| v.total_cmp(&x)).is_err() {
        return Err(Error::NotAnAtom(x));
    }
    b.quantile(a.cdf(x))
}

/// `inf_ε { ε + P(|X - Y| > ε) }` over the coupling.
///
/// The objective drops only at the values `|x - y|`, so the infimum is a
/// minimum over `{0} ∪ {|x - y|}`.
pub fn ky_fan_levy(c: &Coupling1D) -> f64 {
    let mut gaps: Vec<(f64, f64)> = c.pairs().iter().map(|&(x, y, w)| ((x - y).abs(), w)).collect();
    gaps.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut tail: f64 = gaps.iter().filter(|g| g.0 > 0.0).map(|g| g.1).sum();
    let mut best = tail.min(1.0);
    let mut k = 0;
    while k < gaps.len() {
        let eps = gaps[k].0;
        while k < gaps.len() && gaps[k].0 == eps {
            if eps > 0.0 {
                tail -= gaps[k].1;
            }
            k += 1;
        }
        best = best.min(eps + tail.max(0.0));
    }
    best
}
