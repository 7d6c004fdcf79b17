use std::fs;
use std::path::Path;

use frechet_core::curve::{self, Polyline};
use frechet_core::divergence::{self, DiscreteLawD, KernelSpec, SinkhornConfig};
use frechet_core::gaussian::{self, GaussianLaw, SampleBatch};
use frechet_core::law::{self, Law1D, PointMetric};
use frechet_core::{io, Error};
use nalgebra::DMatrix;
use serde_json::{json, Map, Value};

use crate::Failure;

/// Which subcommand a metric belongs to; also fixes the input file format.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Curve,
    Law,
    Gauss,
    Div,
}

impl Family {
    pub fn command(self) -> &'static str {
        match self {
            Family::Curve => "curve-dist",
            Family::Law => "law-dist",
            Family::Gauss => "gauss",
            Family::Div => "div",
        }
    }
}

pub const METRICS: &[(&str, Family)] = &[
    ("frechet", Family::Curve),
    ("discrete-frechet", Family::Curve),
    ("dtw", Family::Curve),
    ("hausdorff", Family::Curve),
    ("closed-frechet", Family::Curve),
    ("shortest", Family::Curve),
    ("maxmin", Family::Curve),
    ("wasserstein", Family::Law),
    ("w1-area", Family::Law),
    ("winf", Family::Law),
    ("kolmogorov", Family::Law),
    ("levy1", Family::Law),
    ("levy2", Family::Law),
    ("frechet1957", Family::Law),
    ("gini", Family::Law),
    ("w2", Family::Gauss),
    ("fid", Family::Gauss),
    ("gelbrich", Family::Gauss),
    ("tv", Family::Div),
    ("kl", Family::Div),
    ("js", Family::Div),
    ("hellinger", Family::Div),
    ("bhattacharyya", Family::Div),
    ("bc", Family::Div),
    ("energy", Family::Div),
    ("mmd", Family::Div),
    ("sinkhorn", Family::Div),
    ("entropic-ot", Family::Div),
];

/// Names that are recognised but deliberately have no implementation.
pub const REFUSED: &[(&str, &str)] = &[
    (
        "prokhorov",
        "no exact algorithm for this metric is provided; use a transport or divergence metric",
    ),
    (
        "skorokhod",
        "no exact algorithm for this metric is provided; use a curve metric",
    ),
];

pub fn family_of(name: &str) -> Option<Family> {
    METRICS.iter().find(|(n, _)| *n == name).map(|&(_, f)| f)
}

pub fn refusal(name: &str) -> Option<(&'static str, &'static str)> {
    REFUSED.iter().find(|(n, _)| *n == name).copied()
}

/// Every numeric option a metric may read.
#[derive(Debug, Clone)]
pub struct Options {
    pub tol: f64,
    pub p: f64,
    pub alpha: f64,
    pub resolution: f64,
    pub shifts: usize,
    pub sigma: Option<f64>,
    pub eps: Option<f64>,
    pub max_iters: usize,
    pub stop_tol: f64,
    pub point_metric: PointMetric,
}

/// A loaded input file.
pub enum Input {
    Curve(Polyline),
    Law(Law1D),
    Samples(Vec<f64>),
    Moments(Vec<f64>, DMatrix<f64>),
    Batch(SampleBatch),
    Discrete(DiscreteLawD),
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub value: f64,
    pub bracket: Option<(f64, f64)>,
    pub params: Map<String, Value>,
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn input_error(path: &Path, e: Error) -> Failure {
    Failure::Usage(format!("{}: {}: {e}", path.display(), e.kind()))
}

/// Mean and covariance from a JSON `{"mean", "cov"}` file, a JSON discrete
/// law (moments of the law itself) or a CSV batch (unbiased estimate).
fn load_moments(text: &str) -> Result<(Vec<f64>, DMatrix<f64>), Error> {
    if text.trim_start().starts_with('{') {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            msg: e.to_string(),
        })?;
        if v.get("support").is_some() {
            let law = io::parse_discrete_law_json(text)?;
            let d = law.dim();
            return Ok((law.mean(), DMatrix::from_row_slice(d, d, &law.covariance())));
        }
        let bad = |msg: &str| Error::Parse {
            line: 1,
            msg: msg.to_string(),
        };
        let mean: Vec<f64> = serde_json::from_value(v.get("mean").cloned().ok_or_else(|| bad("missing \"mean\""))?)
            .map_err(|e| bad(&e.to_string()))?;
        let cov: Vec<Vec<f64>> = serde_json::from_value(v.get("cov").cloned().ok_or_else(|| bad("missing \"cov\""))?)
            .map_err(|e| bad(&e.to_string()))?;
        let d = mean.len();
        if cov.len() != d || cov.iter().any(|r| r.len() != d) {
            return Err(bad("\"cov\" must be a square matrix matching \"mean\""));
        }
        let g = GaussianLaw::new(mean, DMatrix::from_fn(d, d, |i, j| cov[i][j]))?;
        return Ok((g.mean().iter().copied().collect(), g.cov().clone()));
    }
    let g = gaussian::estimate_gaussian(&io::parse_batch_csv(text)?)?;
    Ok((g.mean().iter().copied().collect(), g.cov().clone()))
}

/// A discrete law in `R^d`, also accepting the 1D `{"atoms", "weights"}` form.
fn load_discrete(text: &str) -> Result<DiscreteLawD, Error> {
    if text.contains("\"atoms\"") {
        let l = io::parse_law_json(text)?;
        return DiscreteLawD::new(l.atoms().iter().map(|&x| vec![x]).collect(), l.weights().to_vec());
    }
    io::parse_discrete_law_json(text)
}

pub fn load(metric: &str, path: &Path) -> Result<Input, Failure> {
    let text = read(path)?;
    let family = family_of(metric).expect("metric validated by caller");
    let loaded = match (family, metric) {
        (Family::Curve, _) => io::parse_curve_csv(&text).map(Input::Curve),
        (Family::Law, "gini") => io::parse_values(&text).map(Input::Samples),
        (Family::Law, _) => io::parse_law(&text).map(Input::Law),
        (Family::Gauss, "fid") => io::parse_batch_csv(&text).map(Input::Batch),
        (Family::Gauss, _) => load_moments(&text).map(|(m, c)| Input::Moments(m, c)),
        (Family::Div, _) => load_discrete(&text).map(Input::Discrete),
    };
    loaded.map_err(|e| input_error(path, e))
}

fn require(opt: Option<f64>, flag: &str, metric: &str) -> Result<f64, Failure> {
    opt.ok_or_else(|| Failure::Usage(format!("metric `{metric}` needs --{flag}")))
}

fn exact(value: f64, params: Value) -> Outcome {
    Outcome {
        value,
        bracket: None,
        params: match params {
            Value::Object(m) => m,
            _ => Map::new(),
        },
    }
}

fn bracketed(r: curve::CurveDistanceResult, params: Value) -> Outcome {
    Outcome {
        bracket: Some((r.lo, r.hi)),
        ..exact(r.value, params)
    }
}

/// Computes `metric` between two loaded inputs.
pub fn compute(metric: &str, a: &Input, b: &Input, o: &Options) -> Result<Outcome, Failure> {
    let out = match (a, b) {
        (Input::Curve(p), Input::Curve(q)) => match metric {
            "frechet" => bracketed(curve::frechet_distance(p, q, o.tol)?, json!({ "tol": o.tol })),
            "closed-frechet" => bracketed(
                curve::closed_frechet(p, q, o.tol, o.shifts)?,
                json!({ "tol": o.tol, "shifts": o.shifts }),
            ),
            "discrete-frechet" => exact(curve::discrete_frechet(p, q)?, json!({})),
            "dtw" => exact(curve::dtw(p, q)?, json!({})),
            "hausdorff" => exact(
                curve::hausdorff(p, q, o.resolution)?,
                json!({ "resolution": o.resolution }),
            ),
            "shortest" => exact(
                curve::shortest_distance(p, q, o.resolution)?,
                json!({ "resolution": o.resolution }),
            ),
            "maxmin" => exact(
                curve::directed_maxmin(p, q, o.resolution)?,
                json!({ "resolution": o.resolution }),
            ),
            _ => unreachable!("curve metric {metric}"),
        },
        (Input::Law(x), Input::Law(y)) => match metric {
            "wasserstein" => exact(law::wasserstein_p(x, y, o.p)?, json!({ "p": o.p })),
            "w1-area" => exact(law::w1_cdf_area(x, y), json!({})),
            "winf" => exact(law::w_infinity(x, y), json!({})),
            "kolmogorov" => exact(law::kolmogorov(x, y), json!({})),
            "levy1" => exact(law::levy_1950_def1(x, y), json!({})),
            "levy2" => exact(
                law::levy_1950_def2(x, y, o.point_metric),
                json!({ "point_metric": format!("{:?}", o.point_metric).to_lowercase() }),
            ),
            "frechet1957" => exact(law::frechet_1957_distance(x, y), json!({})),
            _ => unreachable!("law metric {metric}"),
        },
        (Input::Samples(x), Input::Samples(y)) => {
            let (mut x, mut y) = (x.clone(), y.clone());
            x.sort_by(f64::total_cmp);
            y.sort_by(f64::total_cmp);
            exact(law::gini_index(&x, &y, o.alpha)?, json!({ "alpha": o.alpha }))
        }
        (Input::Moments(m1, s1), Input::Moments(m2, s2)) => {
            let g = gaussian::gelbrich_bound(m1, s1, m2, s2)?;
            match metric {
                "w2" => exact(g.sqrt(), json!({})),
                "gelbrich" => exact(g, json!({})),
                _ => unreachable!("gauss metric {metric}"),
            }
        }
        (Input::Batch(x), Input::Batch(y)) => exact(gaussian::fid(x, y)?, json!({ "covariance": "n-1" })),
        (Input::Discrete(p), Input::Discrete(q)) => match metric {
            "tv" => exact(divergence::total_variation(p, q), json!({})),
            "kl" => exact(divergence::kl(p, q)?, json!({})),
            "js" => exact(divergence::js(p, q), json!({})),
            "hellinger" => exact(divergence::hellinger(p, q), json!({})),
            "bhattacharyya" => exact(divergence::bhattacharyya_distance(p, q), json!({})),
            "bc" => exact(divergence::bhattacharyya_coeff(p, q), json!({})),
            "energy" => exact(divergence::energy_distance(p, q)?, json!({})),
            "mmd" => {
                let sigma = require(o.sigma, "sigma", metric)?;
                exact(
                    divergence::mmd(p, q, &KernelSpec::gaussian(sigma)?)?,
                    json!({ "sigma": sigma }),
                )
            }
            "sinkhorn" | "entropic-ot" => {
                let cfg = SinkhornConfig {
                    epsilon: require(o.eps, "eps", metric)?,
                    max_iters: o.max_iters,
                    stop_tol: o.stop_tol,
                };
                let v = if metric == "sinkhorn" {
                    divergence::sinkhorn_divergence(p, q, &cfg)?
                } else {
                    divergence::entropic_ot(p, q, &cfg)?
                };
                exact(
                    v,
                    json!({ "eps": cfg.epsilon, "max_iters": cfg.max_iters, "stop_tol": cfg.stop_tol }),
                )
            }
            _ => unreachable!("div metric {metric}"),
        },
        _ => unreachable!("inputs loaded for the same metric"),
    };
    Ok(out)
}
