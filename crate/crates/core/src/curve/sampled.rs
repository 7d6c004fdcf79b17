//! Set-based curve comparisons on densified samplings.
//!
//! One curve is sampled with spacing at most `resolution`; each sample is
//! measured against the other curve exactly (point-to-segment distance), so
//! the additive error of every quantity here is at most `resolution / 2`.

use super::{check_dim, dist, Polyline};
use crate::{Error, Result};

fn check_resolution(resolution: f64) -> Result<()> {
    if !(resolution > 0.0 && resolution.is_finite()) {
        return Err(Error::param("resolution", "must be finite and > 0"));
    }
    Ok(())
}

/// Euclidean distance from `c` to the segment `[a, b]`.
pub fn point_segment_distance(c: &[f64], a: &[f64], b: &[f64]) -> f64 {
    let mut vv = 0.0;
    let mut vw = 0.0;
    for ((a, b), c) in a.iter().zip(b).zip(c) {
        let v = b - a;
        vv += v * v;
        vw += v * (c - a);
    }
    let t = if vv > 0.0 { (vw / vv).clamp(0.0, 1.0) } else { 0.0 };
    a.iter()
        .zip(b)
        .zip(c)
        .map(|((a, b), c)| {
            let d = a + t * (b - a) - c;
            d * d
        })
        .sum::<f64>()
        .sqrt()
}

fn distance_to_curve(c: &[f64], q: &Polyline) -> f64 {
    if q.len() == 1 {
        return dist(c, q.first());
    }
    (0..q.edge_count())
        .map(|j| point_segment_distance(c, q.vertex(j), q.vertex(j + 1)))
        .fold(f64::INFINITY, f64::min)
}

/// Calls `f` on points of `p` spaced at most `resolution` apart, vertices included.
fn for_each_sample(p: &Polyline, resolution: f64, mut f: impl FnMut(&[f64])) {
    let mut buf = vec![0.0; p.dim()];
    for i in 0..p.edge_count() {
        let (a, b) = (p.vertex(i), p.vertex(i + 1));
        let k = (dist(a, b) / resolution).ceil().max(1.0) as usize;
        for s in 0..k {
            let t = s as f64 / k as f64;
            for ((o, x), y) in buf.iter_mut().zip(a).zip(b) {
                *o = x + t * (y - x);
            }
            f(&buf);
        }
    }
    f(p.last());
}

/// Directed Hausdorff distance `sup_{a in P} inf_{b in Q} |a - b|`.
pub fn directed_maxmin(p: &Polyline, q: &Polyline, resolution: f64) -> Result<f64> {
    check_dim(p.dim(), q.dim())?;
    check_resolution(resolution)?;
    if p == q {
        // sampled points are not exactly on their own segments after rounding
        return Ok(0.0);
    }
    let mut worst: f64 = 0.0;
    for_each_sample(p, resolution, |c| worst = worst.max(distance_to_curve(c, q)));
    Ok(worst)
}

/// Symmetric Hausdorff distance between the point sets of two curves.
///
/// Traversal order is ignored, so curves tracing one set in different orders
/// are at distance zero.
pub fn hausdorff(p: &Polyline, q: &Polyline, resolution: f64) -> Result<f64> {
    Ok(directed_maxmin(p, q, resolution)?.max(directed_maxmin(q, p, resolution)?))
}

/// Shortest distance between a point of `p` and a point of `q`.
pub fn shortest_distance(p: &Polyline, q: &Polyline, resolution: f64) -> Result<f64> {
    check_dim(p.dim(), q.dim())?;
    check_resolution(resolution)?;
    let mut best = f64::INFINITY;
    for_each_sample(p, resolution, |c| best = best.min(distance_to_curve(c, q)));
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::frechet_distance;

    fn pl(rows: &[[f64; 2]]) -> Polyline {
        Polyline::from_rows(rows.iter()).unwrap()
    }

    /// Sample-to-sample oracle, independent of the point-to-segment path.
    fn dense_hausdorff(p: &Polyline, q: &Polyline, n: usize) -> f64 {
        let sp: Vec<Vec<f64>> = (0..=n)
            .map(|k| p.point_at(k as f64 / n as f64 * p.edge_count() as f64))
            .collect();
        let sq: Vec<Vec<f64>> = (0..=n)
            .map(|k| q.point_at(k as f64 / n as f64 * q.edge_count() as f64))
            .collect();
        let dir = |a: &[Vec<f64>], b: &[Vec<f64>]| {
            a.iter()
                .map(|x| b.iter().map(|y| dist(x, y)).fold(f64::INFINITY, f64::min))
                .fold(0.0, f64::max)
        };
        dir(&sp, &sq).max(dir(&sq, &sp))
    }

    #[test]
    fn identical_curves() {
        let p = pl(&[[0.0, 0.0], [1.0, 1.0], [2.0, 0.0]]);
        assert_eq!(hausdorff(&p, &p, 1e-3).unwrap(), 0.0);
    }

    #[test]
    fn parallel_offset_segments() {
        let p = pl(&[[0.0, 0.0], [1.0, 0.0]]);
        let q = pl(&[[0.0, 1.0], [1.0, 1.0]]);
        let res = 1e-2;
        let oracle = dense_hausdorff(&p, &q, 2000);
        let h = hausdorff(&p, &q, res).unwrap();
        assert!((h - 1.0).abs() <= res);
        assert!((h - oracle).abs() <= res);
        let lambda = shortest_distance(&p, &q, res).unwrap();
        let mu = directed_maxmin(&p, &q, res).unwrap();
        assert!((lambda - 1.0).abs() <= res);
        assert!((mu - 1.0).abs() <= res);
    }

    #[test]
    fn crossing_curves_touch() {
        let p = pl(&[[-1.0, -1.0], [1.0, 1.0]]);
        let q = pl(&[[-1.0, 1.0], [1.0, -1.0]]);
        assert!(shortest_distance(&p, &q, 1e-3).unwrap() < 1e-3);
    }

    #[test]
    fn figure_eight_orders() {
        // centre Q, lobes through R, S and T, P
        let (c, r, s, t, pp) = ([0.0, 0.0], [1.0, 1.0], [1.0, -1.0], [-1.0, -1.0], [-1.0, 1.0]);
        let a = pl(&[c, r, s, c, t, pp, c]);
        let b = pl(&[c, s, r, c, t, pp, c]);
        let res = 1e-3;
        assert!(hausdorff(&a, &b, res).unwrap() < res);
        assert!(dense_hausdorff(&a, &b, 3000) < 1e-2);
        let f = frechet_distance(&a, &b, 1e-9).unwrap();
        assert!(f.value > 0.5, "{}", f.value);
    }

    #[test]
    fn matches_dense_oracle() {
        let p = pl(&[[0.0, 0.0], [1.0, 2.0], [3.0, 1.0]]);
        let q = pl(&[[0.5, -0.5], [2.0, 0.0], [2.5, 2.5]]);
        let h = hausdorff(&p, &q, 1e-3).unwrap();
        assert!((h - dense_hausdorff(&p, &q, 4000)).abs() < 2e-3);
    }

    #[test]
    fn bad_resolution() {
        let p = pl(&[[0.0, 0.0], [1.0, 0.0]]);
        assert!(hausdorff(&p, &p, 0.0).is_err());
        assert!(shortest_distance(&p, &p, f64::NAN).is_err());
    }
}
