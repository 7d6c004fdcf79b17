use nalgebra::{DMatrix, DVector};

use super::{check_same_dim, DiscreteLawD};
use crate::curve::dist;
use crate::{Error, Result};

/// Parameters of the Sinkhorn iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SinkhornConfig {
    pub epsilon: f64,
    pub max_iters: usize,
    /// Convergence threshold. Two distinct laws stop once the row marginals of
    /// the plan are within this in L1; a law against itself stops once no
    /// potential moves by more than this in one sweep.
    pub stop_tol: f64,
}

impl SinkhornConfig {
    pub const DEFAULT_MAX_ITERS: usize = 100_000;
    pub const DEFAULT_STOP_TOL: f64 = 1e-9;

    pub fn new(epsilon: f64) -> Result<Self> {
        let cfg = SinkhornConfig {
            epsilon,
            max_iters: Self::DEFAULT_MAX_ITERS,
            stop_tol: Self::DEFAULT_STOP_TOL,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(Error::param("epsilon", "must be finite and > 0"));
        }
        if self.max_iters == 0 {
            return Err(Error::param("max_iters", "must be >= 1"));
        }
        if !(self.stop_tol > 0.0 && self.stop_tol.is_finite()) {
            return Err(Error::param("stop_tol", "must be finite and > 0"));
        }
        Ok(())
    }
}

/// `−ε log Σ_k exp(v_k / ε)`, shifted by the maximum for stability.
fn soft_min(values: impl Iterator<Item = f64> + Clone, eps: f64) -> f64 {
    let top = values.clone().fold(f64::NEG_INFINITY, f64::max);
    let s: f64 = values.map(|v| ((v - top) / eps).exp()).sum();
    -(top + eps * s.ln())
}

/// Entropic transport cost with squared Euclidean ground cost,
/// `min <C, π> + ε KL(π | p ⊗ q)`, evaluated as the dual objective at the
/// Sinkhorn fixed point.
///
/// The iteration runs in the log domain on the dual potentials. It starts at
/// a temperature on the scale of the largest cost and anneals geometrically
/// down to `cfg.epsilon`, warm-starting each stage; only the final stage is
/// held to `cfg.stop_tol`. `cfg.max_iters` bounds the total sweep count.
///
/// The problem is symmetric, so the arguments are put in a canonical order
/// first and swapping them returns the identical value. For `p == q` the
/// symmetric averaged update `f ← ½ (f + T f)` is used instead: its fixed
/// point is unique, whereas the alternating potentials can drift apart at a
/// vanishing rate when the optimal plan is diagonal.
pub fn entropic_ot(p: &DiscreteLawD, q: &DiscreteLawD, cfg: &SinkhornConfig) -> Result<f64> {
    cfg.validate()?;
    check_same_dim(p, q)?;
    let (p, q) = if canonical_key(q) < canonical_key(p) {
        (q, p)
    } else {
        (p, q)
    };
    let problem = Problem::new(p, q);
    if p == q {
        symmetric_sinkhorn(&problem, cfg)
    } else {
        alternating_sinkhorn(&problem, cfg)
    }
}

fn canonical_key(p: &DiscreteLawD) -> Vec<u64> {
    p.support()
        .iter()
        .zip(p.weights())
        .flat_map(|(x, w)| x.iter().chain(std::iter::once(w)).map(|v| (v + 0.0).to_bits()))
        .collect()
}

struct Problem {
    n: usize,
    m: usize,
    cost: Vec<f64>,
    log_a: Vec<f64>,
    log_b: Vec<f64>,
    a: Vec<f64>,
    b: Vec<f64>,
    c_max: f64,
}

impl Problem {
    fn new(p: &DiscreteLawD, q: &DiscreteLawD) -> Self {
        let cost: Vec<f64> = p
            .support()
            .iter()
            .flat_map(|x| q.support().iter().map(move |y| dist(x, y).powi(2)))
            .collect();
        let c_max = cost.iter().fold(0.0f64, |a, &b| a.max(b));
        Problem {
            n: p.len(),
            m: q.len(),
            log_a: p.weights().iter().map(|w| w.ln()).collect(),
            log_b: q.weights().iter().map(|w| w.ln()).collect(),
            a: p.weights().to_vec(),
            b: q.weights().to_vec(),
            cost,
            c_max,
        }
    }

    /// `f_i ← softmin_j (C_ij − g_j − ε log b_j)`.
    ///
    /// Returns the largest move and the L1 row-marginal violation of the plan
    /// before the update: row `i` of that plan has mass `a_i exp((f_i − f_i') / ε)`.
    fn update_rows(&self, f: &mut [f64], g: &[f64], eps: f64) -> (f64, f64) {
        let (mut change, mut violation): (f64, f64) = (0.0, 0.0);
        for (i, fi) in f.iter_mut().enumerate() {
            let row = &self.cost[i * self.m..(i + 1) * self.m];
            let v = soft_min((0..self.m).map(|j| self.log_b[j] * eps + g[j] - row[j]), eps);
            change = change.max((v - *fi).abs());
            violation += self.a[i] * (((*fi - v) / eps).exp_m1()).abs();
            *fi = v;
        }
        (change, violation)
    }

    fn update_cols(&self, g: &mut [f64], f: &[f64], eps: f64) {
        for (j, gj) in g.iter_mut().enumerate() {
            *gj = soft_min(
                (0..self.n).map(|i| self.log_a[i] * eps + f[i] - self.cost[i * self.m + j]),
                eps,
            );
        }
    }

    /// `log π_ij` of the plan induced by the potentials.
    fn log_plan(&self, f: &[f64], g: &[f64], eps: f64, i: usize, j: usize) -> f64 {
        self.log_a[i] + self.log_b[j] + (f[i] + g[j] - self.cost[i * self.m + j]) / eps
    }

    /// The regularised dual objective, which Sinkhorn and Newton both ascend.
    fn objective(&self, f: &[f64], g: &[f64], eps: f64) -> f64 {
        let mass: f64 = (0..self.n)
            .flat_map(|i| (0..self.m).map(move |j| (i, j)))
            .map(|(i, j)| self.log_plan(f, g, eps, i, j).exp())
            .sum();
        self.dual_value(f, g) - eps * (mass - 1.0)
    }

    /// One damped Newton ascent step on the dual, with the last column
    /// potential pinned to remove the global shift. Returns whether a step
    /// that raises the objective was found.
    fn newton_step(&self, f: &mut [f64], g: &mut [f64], eps: f64) -> bool {
        let (n, m) = (self.n, self.m);
        let k = n + m - 1;
        let mut hess = DMatrix::<f64>::zeros(k, k);
        let mut grad = DVector::<f64>::zeros(k);
        for i in 0..n {
            grad[i] = self.a[i];
        }
        for j in 0..m - 1 {
            grad[n + j] = self.b[j];
        }
        for i in 0..n {
            for j in 0..m {
                let pij = self.log_plan(f, g, eps, i, j).exp();
                hess[(i, i)] += pij / eps;
                grad[i] -= pij;
                if j < m - 1 {
                    hess[(n + j, n + j)] += pij / eps;
                    hess[(i, n + j)] += pij / eps;
                    hess[(n + j, i)] += pij / eps;
                    grad[n + j] -= pij;
                }
            }
        }
        let scale = (0..k).fold(0.0f64, |acc, d| acc.max(hess[(d, d)]));
        if !(scale > 0.0 && scale.is_finite()) {
            return false;
        }
        for d in 0..k {
            hess[(d, d)] += 1e-12 * scale;
        }
        let Some(chol) = hess.cholesky() else {
            return false;
        };
        let step = chol.solve(&grad);
        let start = self.objective(f, g, eps);
        let mut t = 1.0;
        for _ in 0..30 {
            let tf: Vec<f64> = (0..n).map(|i| f[i] + t * step[i]).collect();
            let tg: Vec<f64> = (0..m)
                .map(|j| if j < m - 1 { g[j] + t * step[n + j] } else { g[j] })
                .collect();
            if self.objective(&tf, &tg, eps) > start {
                f.copy_from_slice(&tf);
                g.copy_from_slice(&tg);
                return true;
            }
            t *= 0.5;
        }
        false
    }

    fn dual_value(&self, f: &[f64], g: &[f64]) -> f64 {
        let fa: f64 = f.iter().zip(&self.a).map(|(f, a)| f * a).sum();
        let gb: f64 = g.iter().zip(&self.b).map(|(g, b)| g * b).sum();
        fa + gb
    }
}

/// Runs `sweep` over the annealing schedule; `sweep(eps)` returns the
/// convergence measure of one pass.
fn anneal(problem: &Problem, cfg: &SinkhornConfig, mut sweep: impl FnMut(f64) -> f64) -> Result<()> {
    let mut eps = problem.c_max.max(cfg.epsilon);
    let mut iters = 0;
    loop {
        let last_stage = eps <= cfg.epsilon;
        let stage_tol = if last_stage {
            cfg.stop_tol
        } else {
            cfg.stop_tol.max(1e-6 * eps)
        };
        loop {
            if iters == cfg.max_iters {
                return Err(Error::NoConvergence(cfg.max_iters));
            }
            iters += 1;
            if sweep(eps) <= stage_tol {
                break;
            }
        }
        if last_stage {
            return Ok(());
        }
        eps = (eps * 0.5).max(cfg.epsilon);
    }
}

/// Sweeps between Newton steps on problems small enough for a dense solve.
const NEWTON_EVERY: usize = 10;
const NEWTON_MAX_ATOMS: usize = 256;

fn alternating_sinkhorn(problem: &Problem, cfg: &SinkhornConfig) -> Result<f64> {
    let mut f = vec![0.0; problem.n];
    let mut g = vec![0.0; problem.m];
    let newton = problem.n + problem.m <= NEWTON_MAX_ATOMS && problem.m > 1;
    let mut sweeps = 0usize;
    // When the optimal plan nearly splits into blocks of equal mass, plain
    // sweeps move the relative shift between blocks very slowly as epsilon
    // anneals. A periodic Newton step on the dual fixes that direction
    // directly. The marginals, not the potentials, decide convergence.
    anneal(problem, cfg, |eps| {
        sweeps += 1;
        if newton && sweeps.is_multiple_of(NEWTON_EVERY) {
            problem.newton_step(&mut f, &mut g, eps);
        }
        let (_, violation) = problem.update_rows(&mut f, &g, eps);
        problem.update_cols(&mut g, &f, eps);
        violation
    })?;
    Ok(problem.dual_value(&f, &g))
}

fn symmetric_sinkhorn(problem: &Problem, cfg: &SinkhornConfig) -> Result<f64> {
    let mut f = vec![0.0; problem.n];
    let mut next = vec![0.0; problem.n];
    anneal(problem, cfg, |eps| {
        next.copy_from_slice(&f);
        let _ = problem.update_rows(&mut next, &f, eps);
        let mut change: f64 = 0.0;
        for (fi, ni) in f.iter_mut().zip(&next) {
            let v = 0.5 * (*fi + ni);
            change = change.max((v - *fi).abs());
            *fi = v;
        }
        change
    })?;
    Ok(problem.dual_value(&f, &f))
}

/// Debiased entropic cost `W_ε(p, q) − ½ W_ε(p, p) − ½ W_ε(q, q)`.
///
/// Zero for identical inputs by construction, since the three evaluations
/// then coincide bit for bit.
pub fn sinkhorn_divergence(p: &DiscreteLawD, q: &DiscreteLawD, cfg: &SinkhornConfig) -> Result<f64> {
    let pq = entropic_ot(p, q, cfg)?;
    let pp = entropic_ot(p, p, cfg)?;
    let qq = entropic_ot(q, q, cfg)?;
    Ok(pq - 0.5 * pp - 0.5 * qq)
}
