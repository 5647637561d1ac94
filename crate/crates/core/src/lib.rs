//! Discrete and lattice normal distributions as an exponential family.
//!
//! A discrete normal on a full-rank lattice `Λ = L·Z^d + c` has pmf
//!
//! ```text
//! p_ξ(l) = exp(2π(-½ lᵀξ2 l + lᵀξ1)) / θ_Λ(ξ),   l ∈ Λ,
//! ```
//!
//! where the partition function `θ_Λ` is a Riemann theta function at a real
//! argument. The crate provides:
//!
//! - [`theta`] / [`lattice`]: truncated theta sums with rigorous tail bounds,
//!   computed over lattice points inside an ellipsoid.
//! - [`model`] and [`convert`]: pmf, moments, entropy, cross-entropy, MLE,
//!   Fisher information and the natural ↔ moment conversions.
//! - [`divergence`]: Rényi, KL, Bhattacharyya, Hellinger, Amari, Sharma–Mittal,
//!   Chernoff, γ, Hölder and Cauchy–Schwarz divergences from cumulant values.
//! - [`sampling`]: an ε-exact categorical sampler plus two heuristics.
//! - [`oracle`]: brute-force box sums used as an independent reference.
//!
//! ```
//! use latnorm::{divergence, Family, NaturalParam};
//!
//! let fam = Family::integer(2);
//! let p = NaturalParam::diagonal(&[-0.2, -0.2], &[0.1, 0.2]).unwrap();
//! let q = NaturalParam::diagonal(&[0.2, 0.2], &[0.15, 0.25]).unwrap();
//! let bd = divergence::bhattacharyya(&fam, &p, &q).unwrap();
//! assert!((bd.value - 1.6259948590224578).abs() < 1e-6);
//! ```

// `!(x > 0.0)` is the NaN-rejecting form used for parameter checks.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod convert;
pub mod divergence;
pub mod error;
mod family;
pub mod lattice;
pub mod linalg;
pub mod model;
pub mod oracle;
pub mod params;
pub mod sampling;
pub mod theta;

pub use convert::{natural_from_moments, Conversion, NewtonSettings};
pub use divergence::{ChernoffResult, DivergenceKind, DivergenceResult, OrderParams};
pub use error::{Error, Result};
pub use family::Family;
pub use lattice::{enumerate_ellipsoid, truncation_radius, Lattice, LatticePoint, TruncationSpec};
pub use model::{
    continuous_natural_from_moments, cross_entropy, entropy, fisher_info_1d, mle, moments_from_natural,
    pmf, unnormalized_pmf,
};
pub use params::{
    AugmentedNatural, ContinuousNatural, MomentParam, NaturalParam, OrdinaryParam, SufficientStat,
};
pub use sampling::{RandomState, SampleBatch, SampleMethod};
pub use theta::{log_theta, theta, ThetaResult};
