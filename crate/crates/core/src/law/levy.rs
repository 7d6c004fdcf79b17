//! Lévy-type distances between completed CDF graphs.
//!
//! The completed graph of a law joins the steps of its CDF by vertical jump
//! segments, giving a monotone staircase in the `(x, y)` plane. Every line
//! `x + y = c` crosses it exactly once. Graphs are extended flat one unit
//! beyond the joint atom range on both sides.

use super::Law1D;
use crate::curve::{dist, Polyline};

/// Completed CDF staircase over `[x_lo, x_hi]`.
#[derive(Debug, Clone, PartialEq)]
pub struct CdfGraph {
    vertices: Vec<[f64; 2]>,
}

impl CdfGraph {
    /// Requires `x_lo <= first atom` and `x_hi >= last atom`.
    pub fn new(law: &Law1D, x_lo: f64, x_hi: f64) -> Self {
        let mut vertices = vec![[x_lo, 0.0]];
        let mut push = |v: [f64; 2]| {
            if vertices.last() != Some(&v) {
                vertices.push(v);
            }
        };
        let mut level = 0.0;
        for (&a, &c) in law.atoms().iter().zip(law.cumulative()) {
            push([a, level]);
            push([a, c]);
            level = c;
        }
        push([x_hi, 1.0]);
        CdfGraph { vertices }
    }

    /// Graphs of two laws over their shared extended range.
    pub fn pair(a: &Law1D, b: &Law1D) -> (CdfGraph, CdfGraph) {
        let lo = a.atoms()[0].min(b.atoms()[0]) - 1.0;
        let hi = a.atoms()[a.len() - 1].max(b.atoms()[b.len() - 1]) + 1.0;
        (CdfGraph::new(a, lo, hi), CdfGraph::new(b, lo, hi))
    }

    pub fn vertices(&self) -> &[[f64; 2]] {
        &self.vertices
    }

    pub fn to_polyline(&self) -> Polyline {
        Polyline::from_rows(self.vertices.iter()).expect("finite graph vertices")
    }

    /// Values of `x + y` at the corners, strictly increasing.
    pub fn corner_levels(&self) -> impl Iterator<Item = f64> + '_ {
        self.vertices.iter().map(|v| v[0] + v[1])
    }

    /// The unique point of the graph on the line `x + y = c` (clamped to the ends).
    pub fn point_on_line(&self, c: f64) -> [f64; 2] {
        let v = &self.vertices;
        let k = v.partition_point(|p| p[0] + p[1] < c);
        if k == 0 {
            return v[0];
        }
        if k == v.len() {
            return v[v.len() - 1];
        }
        let (a, b) = (v[k - 1], v[k]);
        let (ca, cb) = (a[0] + a[1], b[0] + b[1]);
        let f = ((c - ca) / (cb - ca)).clamp(0.0, 1.0);
        [a[0] + f * (b[0] - a[0]), a[1] + f * (b[1] - a[1])]
    }
}

/// Largest distance `|AA'|` between the points where a line `x + y = c`
/// crosses the two completed CDF graphs.
///
/// `A(c)` and `A'(c)` are piecewise linear in `c`, so `|AA'|` is convex
/// between corner levels of either graph and the maximum sits at a corner level.
pub fn levy_1950_def1(a: &Law1D, b: &Law1D) -> f64 {
    let (ga, gb) = CdfGraph::pair(a, b);
    ga.corner_levels()
        .chain(gb.corner_levels())
        .map(|c| dist(&ga.point_on_line(c), &gb.point_on_line(c)))
        .fold(0.0, f64::max)
}

/// Planar point metric for [`levy_1950_def2`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointMetric {
    Euclidean,
    Taxicab,
}

impl PointMetric {
    fn eval(self, a: [f64; 2], b: [f64; 2]) -> f64 {
        let (dx, dy) = (a[0] - b[0], a[1] - b[1]);
        match self {
            PointMetric::Euclidean => dx.hypot(dy),
            PointMetric::Taxicab => dx.abs() + dy.abs(),
        }
    }
}

/// Relative sampling step along the graphs.
const DEF2_RESOLUTION: f64 = 1e-4;

/// Distance from `p` to an axis-parallel segment: the clamped projection is
/// the nearest point under both supported metrics.
fn point_to_axis_segment(p: [f64; 2], a: [f64; 2], b: [f64; 2], metric: PointMetric) -> f64 {
    let q = [
        p[0].clamp(a[0].min(b[0]), a[0].max(b[0])),
        p[1].clamp(a[1].min(b[1]), a[1].max(b[1])),
    ];
    metric.eval(p, q)
}

fn directed(from: &CdfGraph, to: &CdfGraph, step: f64, metric: PointMetric) -> f64 {
    let near = |p: [f64; 2]| {
        to.vertices
            .windows(2)
            .map(|w| point_to_axis_segment(p, w[0], w[1], metric))
            .fold(f64::INFINITY, f64::min)
    };
    let mut worst: f64 = 0.0;
    for w in from.vertices.windows(2) {
        let len = dist(&w[0], &w[1]);
        let k = (len / step).ceil().max(1.0) as usize;
        for s in 0..k {
            let f = s as f64 / k as f64;
            let p = [w[0][0] + f * (w[1][0] - w[0][0]), w[0][1] + f * (w[1][1] - w[0][1])];
            worst = worst.max(near(p));
        }
    }
    worst.max(near(*from.vertices.last().unwrap()))
}

/// Symmetric Hausdorff-type distance between the completed CDF graphs under
/// the chosen point metric.
///
/// One graph is sampled with spacing `1e-4` times its length and each sample
/// is measured exactly against the other graph; the additive error is at
/// most half that spacing.
pub fn levy_1950_def2(a: &Law1D, b: &Law1D, metric: PointMetric) -> f64 {
    let (ga, gb) = CdfGraph::pair(a, b);
    let length = |g: &CdfGraph| g.vertices.windows(2).map(|w| dist(&w[0], &w[1])).sum::<f64>();
    let step = DEF2_RESOLUTION * length(&ga).max(length(&gb));
    directed(&ga, &gb, step, metric).max(directed(&gb, &ga, step, metric))
}
