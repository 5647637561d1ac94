//! Real-argument Riemann theta sums, the partition function of the family.
//!
//! `θ_Λ(ξ) = Σ_{l∈Λ} exp(2π(-½ lᵀξ2 l + lᵀξ1))`, truncated to the ellipsoid
//! chosen by [`truncation_window`] and accumulated in log space.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};

use crate::error::Result;
use crate::lattice::{for_each_in_ellipsoid, truncation_window, Lattice, TruncationSpec};
use crate::linalg::check_dim;
use crate::params::NaturalParam;

/// A truncated theta sum with its gradient and tail bound.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaResult {
    /// `θ(ξ)`; may overflow to infinity when `log_value` is large.
    pub value: f64,
    pub log_value: f64,
    /// `∂θ/∂ξ1 = Σ 2πl·term(l)`.
    pub grad_xi1: DVector<f64>,
    /// `∂θ/∂ξ2 = Σ -π l lᵀ·term(l)`, every entry treated as free.
    pub grad_xi2: DMatrix<f64>,
    /// `∇ log θ` in the ξ1 block, i.e. `grad_xi1 / θ`.
    pub dlog_xi1: DVector<f64>,
    /// `∇ log θ` in the ξ2 block, i.e. `grad_xi2 / θ`.
    pub dlog_xi2: DMatrix<f64>,
    /// Bound on the absolute mass outside the window.
    pub tail_bound: f64,
    pub log_tail_bound: f64,
    pub points_used: usize,
    pub radius: f64,
}

impl ThetaResult {
    /// Bound on `|δ log θ|` implied by the truncation.
    pub fn log_error_bound(&self) -> f64 {
        (self.log_tail_bound - self.log_value).exp()
    }
}

/// Running sums scaled by `exp(-shift)`.
struct Accumulator {
    shift: f64,
    sum: f64,
    first: DVector<f64>,
    second: DMatrix<f64>,
}

impl Accumulator {
    fn new(d: usize) -> Self {
        Self {
            shift: f64::NEG_INFINITY,
            sum: 0.0,
            first: DVector::zeros(d),
            second: DMatrix::zeros(d, d),
        }
    }

    fn add(&mut self, exponent: f64, l: &[f64]) {
        if exponent > self.shift {
            let s = (self.shift - exponent).exp();
            self.sum *= s;
            self.first *= s;
            self.second *= s;
            self.shift = exponent;
        }
        let w = (exponent - self.shift).exp();
        self.sum += w;
        let d = l.len();
        for i in 0..d {
            let wi = w * l[i];
            self.first[i] += wi;
            for j in i..d {
                self.second[(i, j)] += wi * l[j];
            }
        }
    }
}

/// Evaluates `θ_Λ(ξ)` and its gradient.
pub fn theta(xi: &NaturalParam, lat: &Lattice, spec: &TruncationSpec) -> Result<ThetaResult> {
    check_dim(lat.dim(), xi.dim())?;
    let window = truncation_window(lat, xi, spec)?;
    let d = xi.dim();
    let mut acc = Accumulator::new(d);
    let points_used = for_each_in_ellipsoid(
        lat,
        &window.center,
        xi.xi2(),
        window.radius,
        spec.max_points,
        |_, l| acc.add(xi.log_unnormalized(l), l),
    )?;
    let log_value = acc.shift + acc.sum.ln();
    let value = log_value.exp();
    let mean = &acc.first / acc.sum;
    let mut second = acc.second / acc.sum;
    for i in 0..d {
        for j in 0..i {
            second[(i, j)] = second[(j, i)];
        }
    }
    let dlog_xi1 = mean * (2.0 * PI);
    let dlog_xi2 = second * (-PI);
    Ok(ThetaResult {
        value,
        log_value,
        grad_xi1: &dlog_xi1 * value,
        grad_xi2: &dlog_xi2 * value,
        dlog_xi1,
        dlog_xi2,
        tail_bound: window.tail_bound(),
        log_tail_bound: window.log_tail_bound,
        points_used,
        radius: window.radius,
    })
}

/// Cumulant function `F(ξ) = log θ_Λ(ξ)`.
pub fn log_theta(xi: &NaturalParam, lat: &Lattice, spec: &TruncationSpec) -> Result<f64> {
    theta(xi, lat, spec).map(|t| t.log_value)
}
