use super::{check_dim, dist, Polyline};
use crate::{Error, Result};

/// Quadratic coefficients below this magnitude are treated as zero.
const DEGENERATE_QUADRATIC: f64 = 1e-15;
/// Roots are widened by this amount in parameter space.
const ROOT_WIDENING: f64 = 1e-12;
/// Relative slack under which a negative discriminant counts as a tangency.
const TANGENT_SLACK: f64 = 1e-12;

/// Closed subinterval `[lo, hi]` of `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub const UNIT: Interval = Interval { lo: 0.0, hi: 1.0 };

    pub fn new(lo: f64, hi: f64) -> Option<Interval> {
        let lo = lo.max(0.0);
        let hi = hi.min(1.0);
        (lo <= hi).then_some(Interval { lo, hi })
    }

    pub fn contains(&self, t: f64) -> bool {
        self.lo <= t && t <= self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

/// A directed segment `a -> b`, parameterised over `[0, 1]`.
#[derive(Debug, Clone, Copy)]
pub struct Segment<'a> {
    pub a: &'a [f64],
    pub b: &'a [f64],
}

impl<'a> Segment<'a> {
    pub fn new(a: &'a [f64], b: &'a [f64]) -> Self {
        Segment { a, b }
    }

    pub fn dim(&self) -> usize {
        self.a.len()
    }

    pub fn point_at(&self, t: f64) -> Vec<f64> {
        self.a.iter().zip(self.b).map(|(x, y)| x + t * (y - x)).collect()
    }

    /// Parameters `t` with `|a + t (b - a) - c| <= eps`.
    pub(crate) fn free_interval(&self, c: &[f64], eps: f64) -> Option<Interval> {
        let mut qa = 0.0;
        let mut qb = 0.0;
        let mut qc = 0.0;
        for ((a, b), c) in self.a.iter().zip(self.b).zip(c) {
            let v = b - a;
            let w = a - c;
            qa += v * v;
            qb += 2.0 * v * w;
            qc += w * w;
        }
        qc -= eps * eps;
        if qa < DEGENERATE_QUADRATIC {
            return solve_linear(qb, qc);
        }
        let mut disc = qb * qb - 4.0 * qa * qc;
        if disc < 0.0 {
            if disc < -TANGENT_SLACK * (qb * qb + (4.0 * qa * qc).abs()) {
                return None;
            }
            disc = 0.0;
        }
        let root = disc.sqrt();
        let lo = (-qb - root) / (2.0 * qa);
        let hi = (-qb + root) / (2.0 * qa);
        Interval::new(lo - ROOT_WIDENING, hi + ROOT_WIDENING)
    }
}

fn solve_linear(b: f64, c: f64) -> Option<Interval> {
    // b t + c <= 0 on [0, 1]
    if b.abs() < DEGENERATE_QUADRATIC {
        return (c <= 0.0).then_some(Interval::UNIT);
    }
    let t = -c / b;
    if b > 0.0 {
        Interval::new(0.0, t + ROOT_WIDENING)
    } else {
        Interval::new(t - ROOT_WIDENING, 1.0)
    }
}

/// Free intervals on the four sides of one free-space cell.
///
/// The cell spans `s` (along `edge_p`) horizontally and `t` (along `edge_q`)
/// vertically. `left`/`right` are intervals of `t` at `s = 0`/`s = 1`;
/// `bottom`/`top` are intervals of `s` at `t = 0`/`t = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellBoundaries {
    pub left: Option<Interval>,
    pub right: Option<Interval>,
    pub bottom: Option<Interval>,
    pub top: Option<Interval>,
}

pub fn free_space_cell(edge_p: Segment<'_>, edge_q: Segment<'_>, epsilon: f64) -> Result<CellBoundaries> {
    check_epsilon(epsilon)?;
    check_dim(edge_p.dim(), edge_q.dim())?;
    check_dim(edge_p.a.len(), edge_p.b.len())?;
    check_dim(edge_q.a.len(), edge_q.b.len())?;
    Ok(CellBoundaries {
        left: edge_q.free_interval(edge_p.a, epsilon),
        right: edge_q.free_interval(edge_p.b, epsilon),
        bottom: edge_p.free_interval(edge_q.a, epsilon),
        top: edge_p.free_interval(edge_q.b, epsilon),
    })
}

pub(crate) fn check_epsilon(epsilon: f64) -> Result<()> {
    if !(epsilon >= 0.0 && epsilon.is_finite()) {
        return Err(Error::param("epsilon", "must be finite and >= 0"));
    }
    Ok(())
}

/// Reachable part of the right side and the top side of a cell, given the
/// reachable part of its left and bottom sides.
#[inline]
fn propagate(
    left_reach: Option<Interval>,
    bottom_reach: Option<Interval>,
    right_free: Option<Interval>,
    top_free: Option<Interval>,
) -> (Option<Interval>, Option<Interval>) {
    let right = match (bottom_reach, left_reach) {
        (Some(_), _) => right_free,
        (None, Some(l)) => right_free.and_then(|r| Interval::new(r.lo.max(l.lo), r.hi)),
        (None, None) => None,
    };
    let top = match (left_reach, bottom_reach) {
        (Some(_), _) => top_free,
        (None, Some(b)) => top_free.and_then(|t| Interval::new(t.lo.max(b.lo), t.hi)),
        (None, None) => None,
    };
    (right, top)
}

/// Reachable interval on the next side of the outer boundary (column 0 or
/// row 0), where paths can only run straight along the boundary.
#[inline]
fn boundary_chain(prev_reaches_end: bool, free: Option<Interval>) -> Option<Interval> {
    if !prev_reaches_end {
        return None;
    }
    free.filter(|f| f.lo <= 0.0)
}

fn point_curve_max(point: &[f64], curve: &Polyline) -> f64 {
    curve.vertices().map(|v| dist(point, v)).fold(0.0, f64::max)
}

/// Exact Fréchet distance when one curve is a single point.
pub(crate) fn degenerate_distance(p: &Polyline, q: &Polyline) -> Option<f64> {
    if p.len() == 1 {
        Some(point_curve_max(p.first(), q))
    } else if q.len() == 1 {
        Some(point_curve_max(q.first(), p))
    } else {
        None
    }
}

/// Decides whether the Fréchet distance of `p` and `q` is at most `epsilon`.
///
/// Reachability is propagated cell by cell over the free-space diagram,
/// keeping one row of bottom intervals, so the cost is `O(mn)` time and
/// `O(m)` memory.
pub fn frechet_decision(p: &Polyline, q: &Polyline, epsilon: f64) -> Result<bool> {
    check_dim(p.dim(), q.dim())?;
    check_epsilon(epsilon)?;
    Ok(decide(p, q, epsilon))
}

pub(crate) fn decide(p: &Polyline, q: &Polyline, eps: f64) -> bool {
    if let Some(d) = degenerate_distance(p, q) {
        return d <= eps;
    }
    if dist(p.first(), q.first()) > eps || dist(p.last(), q.last()) > eps {
        return false;
    }
    let m = p.edge_count();
    let n = q.edge_count();

    // Bottom reachable intervals of the current row of cells.
    let mut bottom: Vec<Option<Interval>> = Vec::with_capacity(m);
    let mut reaches = true;
    for i in 0..m {
        let r = boundary_chain(reaches, p.edge(i).free_interval(q.first(), eps));
        reaches = r.is_some_and(|r| r.hi >= 1.0);
        bottom.push(r);
    }

    let mut column_reaches = true;
    let mut corner = None;
    for j in 0..n {
        let eq = q.edge(j);
        let q_top = q.vertex(j + 1);
        let mut left = boundary_chain(column_reaches, eq.free_interval(p.first(), eps));
        column_reaches = left.is_some_and(|l| l.hi >= 1.0);
        let mut alive = left.is_some();
        for (i, b) in bottom.iter_mut().enumerate() {
            if left.is_none() && b.is_none() {
                continue;
            }
            let right_free = eq.free_interval(p.vertex(i + 1), eps);
            let top_free = p.edge(i).free_interval(q_top, eps);
            let (right, top) = propagate(left, *b, right_free, top_free);
            left = right;
            *b = top;
            alive |= top.is_some();
        }
        if j + 1 == n {
            corner = left;
        }
        if !alive && !column_reaches {
            return false;
        }
    }
    corner.is_some_and(|c| c.hi >= 1.0)
}

/// Full free-space diagram with free and reachable boundary intervals.
///
/// Cell `(i, j)` pairs edge `i` of `p` with edge `j` of `q`.
#[derive(Debug, Clone)]
pub struct FreeSpaceDiagram {
    epsilon: f64,
    m: usize,
    n: usize,
    cells: Vec<CellBoundaries>,
    reach_left: Vec<Option<Interval>>,
    reach_bottom: Vec<Option<Interval>>,
    reach_right: Vec<Option<Interval>>,
    reach_top: Vec<Option<Interval>>,
    endpoints_ok: bool,
}

impl FreeSpaceDiagram {
    /// Builds the diagram. Both curves need at least one edge.
    pub fn build(p: &Polyline, q: &Polyline, epsilon: f64) -> Result<Self> {
        check_dim(p.dim(), q.dim())?;
        check_epsilon(epsilon)?;
        if p.edge_count() == 0 || q.edge_count() == 0 {
            return Err(Error::param(
                "polyline",
                "free-space diagram needs curves with at least one edge",
            ));
        }
        let m = p.edge_count();
        let n = q.edge_count();
        let mut cells = Vec::with_capacity(m * n);
        for j in 0..n {
            for i in 0..m {
                cells.push(free_space_cell(p.edge(i), q.edge(j), epsilon)?);
            }
        }
        let endpoints_ok = dist(p.first(), q.first()) <= epsilon && dist(p.last(), q.last()) <= epsilon;
        let mut diagram = FreeSpaceDiagram {
            epsilon,
            m,
            n,
            cells,
            reach_left: vec![None; m * n],
            reach_bottom: vec![None; m * n],
            reach_right: vec![None; m * n],
            reach_top: vec![None; m * n],
            endpoints_ok,
        };
        if endpoints_ok {
            diagram.propagate_all();
        }
        Ok(diagram)
    }

    fn propagate_all(&mut self) {
        let (m, n) = (self.m, self.n);
        let mut reaches = true;
        for i in 0..m {
            let r = boundary_chain(reaches, self.cells[i].bottom);
            reaches = r.is_some_and(|r| r.hi >= 1.0);
            self.reach_bottom[i] = r;
        }
        let mut reaches = true;
        for j in 0..n {
            let r = boundary_chain(reaches, self.cells[j * m].left);
            reaches = r.is_some_and(|r| r.hi >= 1.0);
            self.reach_left[j * m] = r;
        }
        for j in 0..n {
            for i in 0..m {
                let k = j * m + i;
                let c = self.cells[k];
                let (right, top) = propagate(self.reach_left[k], self.reach_bottom[k], c.right, c.top);
                self.reach_right[k] = right;
                self.reach_top[k] = top;
                if i + 1 < m {
                    self.reach_left[k + 1] = right;
                }
                if j + 1 < n {
                    self.reach_bottom[k + m] = top;
                }
            }
        }
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Grid size as `(edges of p, edges of q)`.
    pub fn dims(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    pub fn cell(&self, i: usize, j: usize) -> &CellBoundaries {
        &self.cells[j * self.m + i]
    }

    pub fn reachable_left(&self, i: usize, j: usize) -> Option<Interval> {
        self.reach_left[j * self.m + i]
    }

    pub fn reachable_bottom(&self, i: usize, j: usize) -> Option<Interval> {
        self.reach_bottom[j * self.m + i]
    }

    pub fn reachable_right(&self, i: usize, j: usize) -> Option<Interval> {
        self.reach_right[j * self.m + i]
    }

    pub fn reachable_top(&self, i: usize, j: usize) -> Option<Interval> {
        self.reach_top[j * self.m + i]
    }

    /// True when the corner `(m, n)` is reachable by a bimonotone path.
    pub fn corner_reachable(&self) -> bool {
        self.endpoints_ok
            && self
                .reachable_right(self.m - 1, self.n - 1)
                .is_some_and(|r| r.hi >= 1.0)
    }
}
