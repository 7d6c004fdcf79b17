use frechet_core::gaussian::{bures, fid, gaussian_w2, gelbrich_bound, sym_sqrt, GaussianLaw, SampleBatch};
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;

fn matrix(d: usize) -> impl Strategy<Value = DMatrix<f64>> {
    prop::collection::vec(-1.5..1.5f64, d * d).prop_map(move |v| DMatrix::from_row_slice(d, d, &v))
}

fn gaussian(d: usize) -> impl Strategy<Value = GaussianLaw> {
    (prop::collection::vec(-3.0..3.0f64, d), matrix(d), 0.01..1.0f64).prop_map(move |(m, a, ridge)| {
        let cov = &a * a.transpose() + DMatrix::identity(d, d) * ridge;
        GaussianLaw::new(m, cov).unwrap()
    })
}

/// A rotation built from a QR factorisation of a random matrix.
fn orthogonal(d: usize) -> impl Strategy<Value = DMatrix<f64>> {
    matrix(d).prop_filter_map("singular", |a| {
        let qr = a.qr();
        (qr.r().diagonal().iter().all(|v| v.abs() > 1e-3)).then(|| qr.q())
    })
}

fn rotate(g: &GaussianLaw, r: &DMatrix<f64>) -> GaussianLaw {
    let m: DVector<f64> = r * g.mean();
    GaussianLaw::new(m.iter().copied().collect(), r * g.cov() * r.transpose()).unwrap()
}

proptest! {
    #[test]
    fn orthogonal_invariance(a in gaussian(3), b in gaussian(3), r in orthogonal(3)) {
        let before = gaussian_w2(&a, &b).unwrap();
        let after = gaussian_w2(&rotate(&a, &r), &rotate(&b, &r)).unwrap();
        prop_assert!((before - after).abs() <= 1e-8, "{before} vs {after}");
    }

    #[test]
    fn metric_axioms(a in gaussian(2), b in gaussian(2), c in gaussian(2)) {
        prop_assert_eq!(gaussian_w2(&a, &a).unwrap(), 0.0);
        let (ab, ba) = (gaussian_w2(&a, &b).unwrap(), gaussian_w2(&b, &a).unwrap());
        prop_assert!((ab - ba).abs() <= 1e-7);
        prop_assert!(gaussian_w2(&a, &c).unwrap() <= ab + gaussian_w2(&b, &c).unwrap() + 1e-7);
    }

    #[test]
    fn univariate_closed_form(m1 in -5.0..5.0f64, s1 in 0.01..5.0f64, m2 in -5.0..5.0f64, s2 in 0.01..5.0f64) {
        let w = gaussian_w2(&GaussianLaw::univariate(m1, s1).unwrap(), &GaussianLaw::univariate(m2, s2).unwrap()).unwrap();
        let expected = ((m1 - m2).powi(2) + (s1 - s2).powi(2)).sqrt();
        prop_assert!((w - expected).abs() <= 1e-12 * expected.max(1.0), "{w} vs {expected}");
    }

    #[test]
    fn gelbrich_is_squared_w2(a in gaussian(3), b in gaussian(3)) {
        let m = |g: &GaussianLaw| g.mean().iter().copied().collect::<Vec<f64>>();
        let g = gelbrich_bound(&m(&a), a.cov(), &m(&b), b.cov()).unwrap();
        prop_assert!((g - gaussian_w2(&a, &b).unwrap().powi(2)).abs() <= 1e-10 * g.max(1.0));
    }

    #[test]
    fn sqrt_squares_back(g in gaussian(4)) {
        let r = sym_sqrt(g.cov()).unwrap();
        prop_assert!((&r * &r - g.cov()).abs().max() <= 1e-10 * g.cov().abs().max().max(1.0));
        prop_assert!(bures(g.cov(), g.cov()).unwrap() == 0.0);
    }

    #[test]
    fn fid_shift(rows in prop::collection::vec(prop::collection::vec(-3.0..3.0f64, 3), 2..40), v in prop::collection::vec(-2.0..2.0f64, 3)) {
        let a = SampleBatch::from_rows(&rows).unwrap();
        let b = a.translate(&v).unwrap();
        let expected: f64 = v.iter().map(|x| x * x).sum();
        prop_assert!((fid(&a, &b).unwrap() - expected).abs() <= 1e-9);
        prop_assert_eq!(fid(&a, &a).unwrap(), 0.0);
    }
}
