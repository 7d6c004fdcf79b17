//! Fréchet-type distances between polygonal curves and between probability laws.
//!
//! The crate covers two families of comparisons that share one idea, the
//! minimisation over couplings:
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`curve`] | continuous Fréchet (free-space decision and bracketed search), discrete Fréchet, DTW, Hausdorff, closed curves, free-space SVG |
//! | [`law`] | finite laws on the real line: CDF/quantile, `W_p`, `W_∞`, Kolmogorov, Lévy, couplings, Fréchet–Hoeffding bounds, Gini index, Cantor function |
//! | [`gaussian`] | matrix square root, Bures metric, Gaussian `W_2`, FID, Gelbrich bound |
//! | [`divergence`] | TV, KL, JS, Hellinger, energy, MMD, Sinkhorn divergence, sequence-space metric |
//! | [`oracle`] | exact small-instance optimal transport by permutation enumeration |
//! | [`io`] | parsers for the curve, law and batch file formats |
//!
//! Every operation is a pure function of immutable inputs.

pub mod curve;
pub mod divergence;
mod error;
pub mod gaussian;
pub mod io;
pub mod law;
pub mod oracle;

pub use error::{Error, Result};
