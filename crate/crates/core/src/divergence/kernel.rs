use super::{check_same_dim, DiscreteLawD};
use crate::curve::dist;
use crate::{Error, Result};

/// Gaussian kernel `exp(−‖x − y‖² / (2σ²))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelSpec {
    sigma: f64,
}

impl KernelSpec {
    pub fn gaussian(sigma: f64) -> Result<Self> {
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(Error::param("sigma", "must be finite and > 0"));
        }
        Ok(KernelSpec { sigma })
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn eval(&self, x: &[f64], y: &[f64]) -> f64 {
        let d = dist(x, y);
        (-d * d / (2.0 * self.sigma * self.sigma)).exp()
    }
}

/// `E f(X, Y)` for independent `X ~ p`, `Y ~ q`.
fn expect(p: &DiscreteLawD, q: &DiscreteLawD, f: impl Fn(&[f64], &[f64]) -> f64) -> f64 {
    let mut total = 0.0;
    for (x, a) in p.support().iter().zip(p.weights()) {
        for (y, b) in q.support().iter().zip(q.weights()) {
            total += a * b * f(x, y);
        }
    }
    total
}

/// `self(p) + self(q) − (cross(p, q) + cross(q, p))`, summed so that swapping
/// the arguments gives bit-identical results.
fn symmetric_gap(p: &DiscreteLawD, q: &DiscreteLawD, f: impl Fn(&[f64], &[f64]) -> f64) -> f64 {
    let own = expect(p, p, &f) + expect(q, q, &f);
    let cross = expect(p, q, &f) + expect(q, p, &f);
    own - cross
}

/// Energy distance: the root of `2E‖X − Y‖ − E‖X − X'‖ − E‖Y − Y'‖`.
pub fn energy_distance(p: &DiscreteLawD, q: &DiscreteLawD) -> Result<f64> {
    check_same_dim(p, q)?;
    Ok((-symmetric_gap(p, q, dist)).max(0.0).sqrt())
}

/// Maximum mean discrepancy: RKHS norm of the difference of kernel mean
/// embeddings.
pub fn mmd(p: &DiscreteLawD, q: &DiscreteLawD, kernel: &KernelSpec) -> Result<f64> {
    check_same_dim(p, q)?;
    Ok(symmetric_gap(p, q, |x, y| kernel.eval(x, y)).max(0.0).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d1(x: f64) -> DiscreteLawD {
        DiscreteLawD::dirac(vec![x]).unwrap()
    }

    #[test]
    fn energy_examples() {
        let p = DiscreteLawD::uniform(vec![vec![0.0, 1.0], vec![2.0, 0.5], vec![1.0, 1.0]]).unwrap();
        assert_eq!(energy_distance(&p, &p).unwrap(), 0.0);
        assert!((energy_distance(&d1(0.0), &d1(1.0)).unwrap() - 2f64.sqrt()).abs() < 1e-15);
        let q = DiscreteLawD::new(vec![vec![0.3, 0.1], vec![1.0, 1.0]], vec![0.4, 0.6]).unwrap();
        assert_eq!(energy_distance(&p, &q).unwrap(), energy_distance(&q, &p).unwrap());
        assert!(energy_distance(&p, &d1(0.0)).is_err());
    }

    #[test]
    fn mmd_examples() {
        let k = KernelSpec::gaussian(1.0).unwrap();
        let p = DiscreteLawD::uniform(vec![vec![0.0], vec![3.0]]).unwrap();
        assert_eq!(mmd(&p, &p, &k).unwrap(), 0.0);
        let expect = (2.0 * (1.0 - (-0.5f64).exp())).sqrt();
        assert!((mmd(&d1(0.0), &d1(1.0), &k).unwrap() - expect).abs() < 1e-15);
        assert!(KernelSpec::gaussian(0.0).is_err());
    }

    #[test]
    fn mmd_shrinks_with_bandwidth() {
        let p = DiscreteLawD::uniform(vec![vec![0.0], vec![1.0], vec![2.5]]).unwrap();
        let q = DiscreteLawD::new(vec![vec![0.5], vec![4.0]], vec![0.3, 0.7]).unwrap();
        let mut prev = f64::INFINITY;
        for k in 0..30 {
            let sigma = 0.5 * 1.3f64.powi(k);
            let v = mmd(&p, &q, &KernelSpec::gaussian(sigma).unwrap()).unwrap();
            if sigma > 3.0 {
                assert!(v <= prev + 1e-15, "sigma {sigma}: {v} > {prev}");
            }
            prev = v;
        }
        assert!(prev < 1e-2);
    }
}
