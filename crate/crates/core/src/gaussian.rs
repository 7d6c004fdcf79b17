//! Closed-form quadratic transport between Gaussian laws.
//!
//! `W_2² = ‖m₁ − m₂‖² + Tr(Σ₁ + Σ₂ − 2 (Σ₁^½ Σ₂ Σ₁^½)^½)`. The trace term is
//! the Bures metric between covariances; the same expression is a lower
//! bound on `W_2²` for any two laws with those first two moments.
//!
//! Covariances are estimated with the unbiased `n − 1` denominator. FID
//! implementations disagree on this, so results can differ from other tools
//! by a factor close to `n / (n − 1)` in the trace term.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::{Error, Result};

/// Asymmetry tolerance, relative to `max(1, ‖M‖_F)`.
const SYMMETRY_TOL: f64 = 1e-10;
/// Eigenvalues down to `-PSD_TOL · ‖M‖_F` are treated as round-off and clamped.
const PSD_TOL: f64 = 1e-8;

/// A Gaussian law given by its mean and covariance.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianLaw {
    mean: DVector<f64>,
    cov: DMatrix<f64>,
}

impl GaussianLaw {
    /// Symmetrises `cov` and clamps tiny negative eigenvalues to zero.
    pub fn new(mean: Vec<f64>, cov: DMatrix<f64>) -> Result<Self> {
        let d = mean.len();
        if d == 0 {
            return Err(Error::Empty("mean"));
        }
        if cov.nrows() != d || cov.ncols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: if cov.nrows() != d { cov.nrows() } else { cov.ncols() },
            });
        }
        if mean.iter().chain(cov.iter()).any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("gaussian parameters"));
        }
        let cov = clamp_psd(symmetrized(&cov)?)?;
        Ok(GaussianLaw {
            mean: DVector::from_vec(mean),
            cov,
        })
    }

    /// One-dimensional `N(mean, sd²)`.
    pub fn univariate(mean: f64, sd: f64) -> Result<Self> {
        if sd.is_nan() || sd < 0.0 {
            return Err(Error::param("sd", "must be >= 0"));
        }
        GaussianLaw::new(vec![mean], DMatrix::from_element(1, 1, sd * sd))
    }

    pub fn dim(&self) -> usize {
        self.mean.len()
    }

    pub fn mean(&self) -> &DVector<f64> {
        &self.mean
    }

    pub fn cov(&self) -> &DMatrix<f64> {
        &self.cov
    }
}

/// `n × d` feature matrix with `n >= 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleBatch {
    data: DMatrix<f64>,
}

impl SampleBatch {
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        if rows.len() < 2 {
            return Err(Error::param("batch", "needs at least 2 rows"));
        }
        let d = rows[0].as_ref().len();
        if d == 0 {
            return Err(Error::Empty("batch row"));
        }
        for r in rows {
            let r = r.as_ref();
            if r.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: r.len(),
                });
            }
            if r.iter().any(|v| !v.is_finite()) {
                return Err(Error::NonFinite("batch"));
            }
        }
        let data = DMatrix::from_fn(rows.len(), d, |i, j| rows[i].as_ref()[j]);
        Ok(SampleBatch { data })
    }

    pub fn n(&self) -> usize {
        self.data.nrows()
    }

    pub fn dim(&self) -> usize {
        self.data.ncols()
    }

    pub fn data(&self) -> &DMatrix<f64> {
        &self.data
    }

    /// Adds `v` to every row.
    pub fn translate(&self, v: &[f64]) -> Result<Self> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: v.len(),
            });
        }
        let mut data = self.data.clone();
        for (j, &vj) in v.iter().enumerate() {
            data.column_mut(j).add_scalar_mut(vj);
        }
        Ok(SampleBatch { data })
    }
}

fn check_square(m: &DMatrix<f64>) -> Result<()> {
    if m.nrows() != m.ncols() {
        return Err(Error::DimensionMismatch {
            expected: m.nrows(),
            found: m.ncols(),
        });
    }
    if m.nrows() == 0 {
        return Err(Error::Empty("matrix"));
    }
    if m.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("matrix"));
    }
    Ok(())
}

fn symmetrized(m: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    check_square(m)?;
    let asym = (m - m.transpose()).amax();
    if asym > SYMMETRY_TOL * m.norm().max(1.0) {
        return Err(Error::NotSymmetric(asym));
    }
    Ok((m + m.transpose()) * 0.5)
}

/// Eigenvalues and eigenvectors of a symmetric matrix; `true` when some
/// eigenvalue was clamped up to zero.
fn psd_eigen(m: &DMatrix<f64>) -> Result<(DVector<f64>, DMatrix<f64>, bool)> {
    let eig = SymmetricEigen::new(m.clone());
    let floor = -PSD_TOL * m.norm();
    if let Some(&low) = eig.eigenvalues.iter().find(|&&l| l < floor) {
        return Err(Error::NotPsd(low));
    }
    let clamped = eig.eigenvalues.iter().any(|&l| l < 0.0);
    Ok((eig.eigenvalues.map(|l| l.max(0.0)), eig.eigenvectors, clamped))
}

/// Returns `m` itself unless an eigenvalue needs clamping.
fn clamp_psd(m: DMatrix<f64>) -> Result<DMatrix<f64>> {
    let (vals, vecs, clamped) = psd_eigen(&m)?;
    if !clamped {
        return Ok(m);
    }
    let fixed = &vecs * DMatrix::from_diagonal(&vals) * vecs.transpose();
    Ok((&fixed + fixed.transpose()) * 0.5)
}

/// Symmetric PSD square root by eigendecomposition.
pub fn sym_sqrt(m: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let m = symmetrized(m)?;
    let (vals, vecs, _) = psd_eigen(&m)?;
    let root = &vecs * DMatrix::from_diagonal(&vals.map(f64::sqrt)) * vecs.transpose();
    Ok((&root + root.transpose()) * 0.5)
}

fn check_same_dim(a: &DMatrix<f64>, b: &DMatrix<f64>) -> Result<()> {
    if a.nrows() != b.nrows() {
        return Err(Error::DimensionMismatch {
            expected: a.nrows(),
            found: b.nrows(),
        });
    }
    Ok(())
}

/// Squared Bures distance `Tr(Σ₁ + Σ₂ − 2 (Σ₁^½ Σ₂ Σ₁^½)^½)`, clamped at zero.
pub fn bures(s1: &DMatrix<f64>, s2: &DMatrix<f64>) -> Result<f64> {
    check_same_dim(s1, s2)?;
    let s2 = symmetrized(s2)?;
    let root1 = sym_sqrt(s1)?;
    if s1 == &s2 {
        return Ok(0.0);
    }
    let inner = &root1 * &s2 * &root1;
    let inner = (&inner + inner.transpose()) * 0.5;
    let (vals, _, _) = psd_eigen(&inner)?;
    let cross: f64 = vals.iter().map(|l| l.sqrt()).sum();
    Ok((s1.trace() + s2.trace() - 2.0 * cross).max(0.0))
}

fn squared_w2(m1: &DVector<f64>, s1: &DMatrix<f64>, m2: &DVector<f64>, s2: &DMatrix<f64>) -> Result<f64> {
    if m1.len() != m2.len() {
        return Err(Error::DimensionMismatch {
            expected: m1.len(),
            found: m2.len(),
        });
    }
    Ok((m1 - m2).norm_squared() + bures(s1, s2)?)
}

/// Quadratic Wasserstein distance between two Gaussians (the root, not the square).
pub fn gaussian_w2(a: &GaussianLaw, b: &GaussianLaw) -> Result<f64> {
    Ok(squared_w2(&a.mean, &a.cov, &b.mean, &b.cov)?.sqrt())
}

/// Sample mean and unbiased (`n − 1`) covariance of a batch.
pub fn estimate_gaussian(batch: &SampleBatch) -> Result<GaussianLaw> {
    let n = batch.n() as f64;
    let mean = batch.data.row_mean().transpose();
    let mut centered = batch.data.clone();
    for mut row in centered.row_iter_mut() {
        row -= mean.transpose();
    }
    let cov = centered.transpose() * &centered / (n - 1.0);
    GaussianLaw::new(mean.iter().copied().collect(), cov)
}

/// Fréchet Inception Distance between two feature batches.
///
/// Reported as the square `W_2²` of the fitted Gaussians, as is customary.
pub fn fid(a: &SampleBatch, b: &SampleBatch) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    let (ga, gb) = (estimate_gaussian(a)?, estimate_gaussian(b)?);
    squared_w2(&ga.mean, &ga.cov, &gb.mean, &gb.cov)
}

/// Lower bound on `W_2²` between any laws with the given means and covariances.
///
/// Attained when both laws are Gaussian.
pub fn gelbrich_bound(m1: &[f64], s1: &DMatrix<f64>, m2: &[f64], s2: &DMatrix<f64>) -> Result<f64> {
    let a = GaussianLaw::new(m1.to_vec(), s1.clone())?;
    let b = GaussianLaw::new(m2.to_vec(), s2.clone())?;
    squared_w2(&a.mean, &a.cov, &b.mean, &b.cov)
}
