use super::free_space::{decide, degenerate_distance};
use super::{check_dim, dist, Polyline};
use crate::{Error, Result};

/// Outcome of a tolerance-bracketed curve distance.
///
/// `value` is the upper end of the final bracket and is always a feasible
/// distance (the decision procedure accepts it).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveDistanceResult {
    pub value: f64,
    pub lo: f64,
    pub hi: f64,
    pub tol: f64,
}

impl CurveDistanceResult {
    fn exact(value: f64, tol: f64) -> Self {
        CurveDistanceResult {
            value,
            lo: value,
            hi: value,
            tol,
        }
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::param("tol", "must be finite and > 0"));
    }
    Ok(())
}

/// Continuous Fréchet distance by binary search on [`super::frechet_decision`].
///
/// The bracket starts at `[max endpoint distance, discrete Fréchet]` and is
/// halved until `hi - lo <= tol * max(1, hi)`.
pub fn frechet_distance(p: &Polyline, q: &Polyline, tol: f64) -> Result<CurveDistanceResult> {
    check_dim(p.dim(), q.dim())?;
    check_tol(tol)?;
    if let Some(d) = degenerate_distance(p, q) {
        return Ok(CurveDistanceResult::exact(d, tol));
    }
    let mut lo = dist(p.first(), q.first()).max(dist(p.last(), q.last()));
    let mut hi = discrete_frechet(p, q)?;
    if decide(p, q, lo) {
        return Ok(CurveDistanceResult::exact(lo, tol));
    }
    while hi - lo > tol * hi.max(1.0) {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if decide(p, q, mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(CurveDistanceResult { value: hi, lo, hi, tol })
}

/// Discrete Fréchet distance: min over monotone vertex couplings of the
/// largest coupled vertex distance.
pub fn discrete_frechet(p: &Polyline, q: &Polyline) -> Result<f64> {
    check_dim(p.dim(), q.dim())?;
    let n = q.len();
    let mut prev = vec![0.0f64; n];
    let mut cur = vec![0.0f64; n];
    for (i, pi) in p.vertices().enumerate() {
        for j in 0..n {
            let d = dist(pi, q.vertex(j));
            cur[j] = match (i, j) {
                (0, 0) => d,
                (0, _) => cur[j - 1].max(d),
                (_, 0) => prev[0].max(d),
                _ => prev[j].min(prev[j - 1]).min(cur[j - 1]).max(d),
            };
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    Ok(prev[n - 1])
}

/// Distinct vertices of a closed polyline, in cyclic order.
fn cycle(p: &Polyline) -> Result<Vec<&[f64]>> {
    if p.len() == 1 {
        return Ok(vec![p.first()]);
    }
    if !p.is_closed() {
        return Err(Error::OpenCurve);
    }
    Ok(p.vertices().take(p.len() - 1).collect())
}

/// Fréchet distance between closed curves, as an upper bound.
///
/// Each closed curve is an arc whose two endpoints coincide. `q` is re-rooted
/// at every vertex and at `shifts_per_edge` evenly spaced interior points of
/// every edge; the smallest open-curve distance against `p` is returned.
/// Candidates are visited in order of their start-point distance, which is a
/// lower bound, so the search stops once no remaining root can improve.
pub fn closed_frechet(p: &Polyline, q: &Polyline, tol: f64, shifts_per_edge: usize) -> Result<CurveDistanceResult> {
    check_dim(p.dim(), q.dim())?;
    check_tol(tol)?;
    if shifts_per_edge < 1 {
        return Err(Error::param("shifts_per_edge", "must be >= 1"));
    }
    let _ = cycle(p)?;
    let ring = cycle(q)?;
    if ring.len() == 1 {
        return frechet_distance(p, q, tol);
    }

    let n = ring.len();
    let steps = shifts_per_edge + 1;
    let mut roots: Vec<(f64, usize, Vec<f64>)> = Vec::with_capacity(n * steps);
    for k in 0..n {
        let (a, b) = (ring[k], ring[(k + 1) % n]);
        for s in 0..steps {
            let f = s as f64 / steps as f64;
            let start: Vec<f64> = a.iter().zip(b).map(|(x, y)| x + f * (y - x)).collect();
            roots.push((dist(p.first(), &start), k, start));
        }
    }
    roots.sort_by(|x, y| x.0.total_cmp(&y.0));

    let mut best: Option<CurveDistanceResult> = None;
    for (bound, k, start) in roots {
        if best.is_some_and(|b| bound >= b.value) {
            break;
        }
        let mut rows: Vec<&[f64]> = Vec::with_capacity(n + 2);
        rows.push(&start);
        rows.extend((1..=n).map(|i| ring[(k + i) % n]));
        rows.push(&start);
        let rerooted = Polyline::from_rows(rows)?;
        let r = frechet_distance(p, &rerooted, tol)?;
        if best.is_none_or(|b| r.value < b.value) {
            best = Some(r);
        }
    }
    Ok(best.expect("at least one root"))
}
