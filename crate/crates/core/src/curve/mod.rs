//! Distances between polygonal curves.
//!
//! A [`Polyline`] is an ordered vertex list in `R^d`; its curve is the
//! piecewise-linear path through the vertices. The continuous Fréchet
//! distance is decided on the free-space diagram ([`frechet_decision`]) and
//! computed by a bracketed search over that decision ([`frechet_distance`]).
//! Set-based comparisons (Hausdorff and the shortest/max-min distances) are
//! evaluated on densified samplings with a caller-chosen resolution.
//!
//! All norms in this module are Euclidean.

mod dtw;
mod frechet;
mod free_space;
mod sampled;
mod svg;

pub use dtw::dtw;
pub use frechet::{closed_frechet, discrete_frechet, frechet_distance, CurveDistanceResult};
pub use free_space::{frechet_decision, free_space_cell, CellBoundaries, FreeSpaceDiagram, Interval, Segment};
pub use sampled::{directed_maxmin, hausdorff, point_segment_distance, shortest_distance};
pub use svg::free_space_svg;

use crate::{Error, Result};

/// A point of `R^d` with finite coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::Empty("point coordinates"));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite("point coordinates"));
        }
        Ok(Point(coords))
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

impl AsRef<[f64]> for Point {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

/// Ordered vertex list of uniform dimension.
///
/// Runs of identical consecutive vertices are collapsed on construction, so
/// every edge has positive length. A single vertex is a legal (point) curve.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    dim: usize,
    coords: Vec<f64>,
}

impl Polyline {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        Self::from_rows(points.into_iter().map(|p| p.0))
    }

    /// Builds a polyline from raw coordinate rows.
    pub fn from_rows<I, R>(rows: I) -> Result<Self>
    where
        I: IntoIterator<Item = R>,
        R: AsRef<[f64]>,
    {
        let mut dim = 0;
        let mut coords: Vec<f64> = Vec::new();
        for row in rows {
            let row = row.as_ref();
            if row.is_empty() {
                return Err(Error::Empty("point coordinates"));
            }
            if row.iter().any(|c| !c.is_finite()) {
                return Err(Error::NonFinite("polyline vertex"));
            }
            if dim == 0 {
                dim = row.len();
            } else if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            if coords.len() >= dim && &coords[coords.len() - dim..] == row {
                continue;
            }
            coords.extend_from_slice(row);
        }
        if coords.is_empty() {
            return Err(Error::Empty("polyline"));
        }
        Ok(Polyline { dim, coords })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of vertices (at least one).
    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of edges, `len() - 1`.
    pub fn edge_count(&self) -> usize {
        self.len() - 1
    }

    pub fn vertex(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn vertices(&self) -> std::slice::ChunksExact<'_, f64> {
        self.coords.chunks_exact(self.dim)
    }

    pub fn first(&self) -> &[f64] {
        self.vertex(0)
    }

    pub fn last(&self) -> &[f64] {
        self.vertex(self.len() - 1)
    }

    pub fn edge(&self, i: usize) -> Segment<'_> {
        Segment::new(self.vertex(i), self.vertex(i + 1))
    }

    /// Point at global parameter `s` in `[0, edge_count()]`.
    pub fn point_at(&self, s: f64) -> Vec<f64> {
        if self.len() == 1 {
            return self.vertex(0).to_vec();
        }
        let s = s.clamp(0.0, self.edge_count() as f64);
        let i = (s.floor() as usize).min(self.edge_count() - 1);
        self.edge(i).point_at(s - i as f64)
    }

    /// Splits every edge into `k` equal pieces.
    pub fn subdivide(&self, k: usize) -> Polyline {
        let k = k.max(1);
        let mut rows: Vec<Vec<f64>> = Vec::with_capacity(self.edge_count() * k + 1);
        for i in 0..self.edge_count() {
            let e = self.edge(i);
            for j in 0..k {
                rows.push(e.point_at(j as f64 / k as f64));
            }
        }
        rows.push(self.last().to_vec());
        Polyline::from_rows(rows).expect("subdivision of a valid polyline")
    }

    pub fn translate(&self, v: &[f64]) -> Result<Polyline> {
        check_dim(self.dim, v.len())?;
        let rows = self
            .vertices()
            .map(|p| p.iter().zip(v).map(|(a, b)| a + b).collect::<Vec<_>>());
        Polyline::from_rows(rows)
    }

    pub fn reversed(&self) -> Polyline {
        let rows: Vec<&[f64]> = self.vertices().rev().collect();
        Polyline::from_rows(rows).expect("reversal of a valid polyline")
    }

    /// True when the first and last vertex coincide.
    pub fn is_closed(&self) -> bool {
        self.first() == self.last()
    }
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

pub(crate) fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}
