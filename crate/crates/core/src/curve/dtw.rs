use super::{check_dim, dist, Polyline};
use crate::Result;

/// Dynamic time warping: minimum over warping paths with steps `(1,0)`,
/// `(0,1)`, `(1,1)` from the first vertex pair to the last of the summed
/// vertex distances.
pub fn dtw(p: &Polyline, q: &Polyline) -> Result<f64> {
    check_dim(p.dim(), q.dim())?;
    let n = q.len();
    let mut prev = vec![f64::INFINITY; n];
    let mut cur = vec![0.0; n];
    for (i, pi) in p.vertices().enumerate() {
        for j in 0..n {
            let d = dist(pi, q.vertex(j));
            let best = if i == 0 && j == 0 {
                0.0
            } else {
                let diag = if j > 0 { prev[j - 1] } else { f64::INFINITY };
                let left = if j > 0 { cur[j - 1] } else { f64::INFINITY };
                prev[j].min(diag).min(left)
            };
            cur[j] = best + d;
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    Ok(prev[n - 1])
}
