//! Exact optimal transport for desk-sized instances.
//!
//! Laws whose weights are all multiples of `1/D` are split into `D` equal
//! atoms, which turns the Kantorovich problem into an assignment problem.
//! Some permutation is always optimal, so enumerating all `D!` of them gives
//! the exact optimum. `D` is capped at [`MAX_ASSIGNMENT`]. This is ground
//! truth for tests, not a solver.

use std::collections::HashSet;

use crate::curve::dist;
use crate::divergence::DiscreteLawD;
use crate::law::{Coupling1D, Law1D};
use crate::{Error, Result};

/// Largest assignment size enumerated (8! = 40320 permutations).
pub const MAX_ASSIGNMENT: usize = 8;
/// A weight `w` has denominator `D` when `w · D` is this close to an integer.
const RATIONAL_TOL: f64 = 1e-9;

/// Dense row-major matrix of finite, nonnegative costs.
#[derive(Debug, Clone, PartialEq)]
pub struct CostMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl CostMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::LengthMismatch {
                left: rows * cols,
                right: data.len(),
            });
        }
        if rows == 0 || cols == 0 {
            return Err(Error::Empty("cost matrix"));
        }
        if data.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite("cost matrix"));
        }
        if data.iter().any(|&c| c < 0.0) {
            return Err(Error::param("cost", "entries must be >= 0"));
        }
        Ok(CostMatrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> f64) -> Result<Self> {
        let data = (0..rows)
            .flat_map(|i| (0..cols).map(move |j| (i, j)))
            .map(|(i, j)| f(i, j))
            .collect();
        CostMatrix::new(rows, cols, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }
}

/// Joint weights `π[i][j]` between the atoms of a source and a target law.
#[derive(Debug, Clone, PartialEq)]
pub struct TransportPlan {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl TransportPlan {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn row_sums(&self) -> Vec<f64> {
        self.data.chunks(self.cols).map(|r| r.iter().sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<f64> {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self.get(i, j)).sum())
            .collect()
    }

    /// Nonzero entries as `(i, j, weight)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, &w)| w > 0.0)
            .map(|(k, &w)| (k / self.cols, k % self.cols, w))
    }
}

/// Rearranges `perm` into the next permutation in lexicographic order;
/// `false` once it was the last one.
fn next_permutation(perm: &mut [usize]) -> bool {
    let Some(i) = perm.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = perm.iter().rposition(|&x| x > perm[i]).expect("pivot has a successor");
    perm.swap(i, j);
    perm[i + 1..].reverse();
    true
}

fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        f(&perm);
        if !next_permutation(&mut perm) {
            break;
        }
    }
}

/// Minimum of `Σ C[i, σ(i)] / n` over all permutations `σ`.
///
/// Among optimal permutations the lexicographically smallest is returned.
pub fn assignment_bruteforce(cost: &CostMatrix) -> Result<(f64, Vec<usize>)> {
    let n = cost.rows;
    if cost.cols != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: cost.cols,
        });
    }
    if n > MAX_ASSIGNMENT {
        return Err(Error::EnumerationCap {
            size: n,
            cap: MAX_ASSIGNMENT,
        });
    }
    let mut best = f64::INFINITY;
    let mut arg = Vec::new();
    // lexicographic visiting order plus strict `<` keeps the first optimum
    for_each_permutation(n, |perm| {
        let total: f64 = perm.iter().enumerate().map(|(i, &j)| cost.get(i, j)).sum();
        if total < best {
            best = total;
            arg = perm.to_vec();
        }
    });
    Ok((best / n as f64, arg))
}

/// A law with finitely many atoms and a ground distance between atoms of two
/// such laws.
pub trait FiniteLaw {
    fn atom_weights(&self) -> &[f64];

    /// Distance from atom `i` of `self` to atom `j` of `other`.
    fn atom_distance(&self, i: usize, other: &Self, j: usize) -> f64;

    fn check_compatible(&self, _other: &Self) -> Result<()> {
        Ok(())
    }
}

impl FiniteLaw for Law1D {
    fn atom_weights(&self) -> &[f64] {
        self.weights()
    }

    fn atom_distance(&self, i: usize, other: &Self, j: usize) -> f64 {
        (self.atoms()[i] - other.atoms()[j]).abs()
    }
}

impl FiniteLaw for DiscreteLawD {
    fn atom_weights(&self) -> &[f64] {
        self.weights()
    }

    fn atom_distance(&self, i: usize, other: &Self, j: usize) -> f64 {
        dist(&self.support()[i], &other.support()[j])
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        crate::divergence::check_same_dim(self, other)
    }
}

/// A law split into `denominator` atoms of equal weight.
#[derive(Debug, Clone, PartialEq)]
pub struct Rationalized {
    pub denominator: usize,
    /// How many equal atoms each original atom became.
    pub counts: Vec<usize>,
}

impl Rationalized {
    /// Original atom index of every equal-weight atom, in order.
    pub fn expanded(&self) -> Vec<usize> {
        self.counts
            .iter()
            .enumerate()
            .flat_map(|(i, &k)| std::iter::repeat_n(i, k))
            .collect()
    }
}

fn counts_for(weights: &[f64], d: usize) -> Option<Vec<usize>> {
    let mut counts = Vec::with_capacity(weights.len());
    for &w in weights {
        let scaled = w * d as f64;
        let k = scaled.round();
        if (scaled - k).abs() > RATIONAL_TOL || k < 1.0 {
            return None;
        }
        counts.push(k as usize);
    }
    (counts.iter().sum::<usize>() == d).then_some(counts)
}

fn rationalize_weights(weights: &[f64], max_den: usize) -> Result<Rationalized> {
    (1..=max_den)
        .find_map(|d| counts_for(weights, d).map(|counts| Rationalized { denominator: d, counts }))
        .ok_or(Error::NotRational(max_den))
}

/// Smallest `D <= max_den` such that every weight is `k / D`, with the
/// resulting split counts.
pub fn rationalize<L: FiniteLaw + ?Sized>(law: &L, max_den: usize) -> Result<Rationalized> {
    rationalize_weights(law.atom_weights(), max_den)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Splits both laws over their least common denominator.
fn common_split<L: FiniteLaw>(mu: &L, nu: &L, max_den: usize) -> Result<(Rationalized, Rationalized)> {
    mu.check_compatible(nu)?;
    let a = rationalize(mu, max_den)?;
    let b = rationalize(nu, max_den)?;
    let d = a.denominator / gcd(a.denominator, b.denominator) * b.denominator;
    if d > max_den {
        return Err(Error::NotRational(max_den));
    }
    if d > MAX_ASSIGNMENT {
        return Err(Error::EnumerationCap {
            size: d,
            cap: MAX_ASSIGNMENT,
        });
    }
    let scale = |r: Rationalized| Rationalized {
        denominator: d,
        counts: r.counts.iter().map(|k| k * (d / r.denominator)).collect(),
    };
    Ok((scale(a), scale(b)))
}

/// Aggregates an assignment of split atoms into integer counts per atom pair.
fn plan_counts(rows: &[usize], cols: &[usize], perm: &[usize], n: usize, m: usize) -> Vec<usize> {
    let mut counts = vec![0; n * m];
    for (a, &b) in perm.iter().enumerate() {
        counts[rows[a] * m + cols[b]] += 1;
    }
    counts
}

/// Exact optimal cost `min E d(X, Y)^p` over couplings, with an optimal plan.
///
/// The returned cost is not raised to `1/p`.
pub fn exact_ot<L: FiniteLaw>(mu: &L, nu: &L, p: f64, max_den: usize) -> Result<(f64, TransportPlan)> {
    if !(p >= 1.0 && p.is_finite()) {
        return Err(Error::param("p", "must be finite and >= 1"));
    }
    let (ra, rb) = common_split(mu, nu, max_den)?;
    let d = ra.denominator;
    let (rows, cols) = (ra.expanded(), rb.expanded());
    let cost = CostMatrix::from_fn(d, d, |a, b| mu.atom_distance(rows[a], nu, cols[b]).powf(p))?;
    let (value, perm) = assignment_bruteforce(&cost)?;
    let (n, m) = (ra.counts.len(), rb.counts.len());
    let data = plan_counts(&rows, &cols, &perm, n, m)
        .into_iter()
        .map(|k| k as f64 / d as f64)
        .collect();
    Ok((value, TransportPlan { rows: n, cols: m, data }))
}

/// Every distinct coupling induced by a permutation of the split atoms, in
/// order of first appearance during lexicographic enumeration.
pub fn vertex_couplings(mu: &Law1D, nu: &Law1D, max_den: usize) -> Result<Vec<Coupling1D>> {
    let (ra, rb) = common_split(mu, nu, max_den)?;
    let d = ra.denominator;
    let (rows, cols) = (ra.expanded(), rb.expanded());
    let (n, m) = (ra.counts.len(), rb.counts.len());
    let mut seen = HashSet::new();
    let mut plans = Vec::new();
    for_each_permutation(d, |perm| {
        let counts = plan_counts(&rows, &cols, perm, n, m);
        if seen.insert(counts.clone()) {
            plans.push(counts);
        }
    });
    plans
        .into_iter()
        .map(|counts| {
            let pairs = counts
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(idx, &k)| (mu.atoms()[idx / m], nu.atoms()[idx % m], k as f64 / d as f64))
                .collect();
            Coupling1D::new(pairs)
        })
        .collect()
}
