//! Brute-force reference sums over integer boxes.
//!
//! Nothing here reuses the ellipsoid enumeration, the theta accumulator or the
//! closed-form divergences: every quantity is a plain sum over
//! `z ∈ [-h, h]^d`, `l = L·z + c`, of normalized pmf values. The module exists
//! to cross-check the rest of the crate.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};

use crate::divergence::{DivergenceKind, OrderParams};
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::params::{MomentParam, NaturalParam};

/// Summation box and the admissible relative mass on its boundary shell.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxSpec {
    pub half_width: Vec<i64>,
    pub tail_check: f64,
}

impl BoxSpec {
    pub fn cube(dim: usize, half_width: i64) -> Self {
        Self {
            half_width: vec![half_width; dim],
            tail_check: 1e-13,
        }
    }

    /// `[-40, 40]^d` with shell tolerance `1e-13`.
    pub fn default_for(dim: usize) -> Self {
        Self::cube(dim, 40)
    }
}

/// Normalized log-pmf values of one distribution on the box.
struct BoxPmf {
    points: Vec<Vec<f64>>,
    log_p: Vec<f64>,
    log_norm: f64,
}

fn box_points(lat: &Lattice, spec: &BoxSpec) -> Result<(Vec<Vec<f64>>, Vec<bool>)> {
    let d = lat.dim();
    if spec.half_width.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: spec.half_width.len(),
        });
    }
    if spec.half_width.iter().any(|&h| h < 1) {
        return Err(Error::InvalidParameter("box half width must be at least 1".into()));
    }
    let basis = lat.basis();
    let shift = lat.shift();
    let mut z: Vec<i64> = spec.half_width.iter().map(|h| -h).collect();
    let mut points = Vec::new();
    let mut shell = Vec::new();
    loop {
        let mut l = vec![0.0; d];
        for (i, li) in l.iter_mut().enumerate() {
            *li = shift[i];
            for (j, zj) in z.iter().enumerate() {
                *li += basis[(i, j)] * (*zj as f64);
            }
        }
        points.push(l);
        shell.push(z.iter().zip(&spec.half_width).any(|(a, h)| a.abs() == *h));
        // odometer
        let mut k = d;
        loop {
            if k == 0 {
                return Ok((points, shell));
            }
            k -= 1;
            if z[k] < spec.half_width[k] {
                z[k] += 1;
                break;
            }
            z[k] = -spec.half_width[k];
        }
    }
}

fn exponent(xi: &NaturalParam, l: &[f64]) -> f64 {
    let d = l.len();
    let mut e = 0.0;
    for i in 0..d {
        e += xi.xi1()[i] * l[i];
        for j in 0..d {
            e -= 0.5 * l[i] * xi.xi2()[(i, j)] * l[j];
        }
    }
    2.0 * PI * e
}

impl BoxPmf {
    fn new(xi: &NaturalParam, lat: &Lattice, spec: &BoxSpec) -> Result<Self> {
        if xi.dim() != lat.dim() {
            return Err(Error::DimensionMismatch {
                expected: lat.dim(),
                got: xi.dim(),
            });
        }
        let (points, shell) = box_points(lat, spec)?;
        let exps: Vec<f64> = points.iter().map(|l| exponent(xi, l)).collect();
        let max = exps.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let total: f64 = exps.iter().map(|e| (e - max).exp()).sum();
        let shell_mass: f64 = exps
            .iter()
            .zip(&shell)
            .filter(|(_, s)| **s)
            .map(|(e, _)| (e - max).exp())
            .sum::<f64>()
            / total;
        if shell_mass > spec.tail_check {
            return Err(Error::TailTooFat {
                mass: shell_mass,
                limit: spec.tail_check,
            });
        }
        let log_norm = max + total.ln();
        let log_p = exps.iter().map(|e| e - log_norm).collect();
        Ok(Self {
            points,
            log_p,
            log_norm,
        })
    }

    fn p(&self) -> impl Iterator<Item = f64> + '_ {
        self.log_p.iter().map(|v| v.exp())
    }
}

/// `θ_Λ(ξ)` by box summation.
pub fn oracle_theta(xi: &NaturalParam, lat: &Lattice, spec: &BoxSpec) -> Result<f64> {
    oracle_log_theta(xi, lat, spec).map(f64::exp)
}

pub fn oracle_log_theta(xi: &NaturalParam, lat: &Lattice, spec: &BoxSpec) -> Result<f64> {
    Ok(BoxPmf::new(xi, lat, spec)?.log_norm)
}

/// `E[t(x)]` by box summation.
pub fn oracle_moments(xi: &NaturalParam, lat: &Lattice, spec: &BoxSpec) -> Result<MomentParam> {
    let b = BoxPmf::new(xi, lat, spec)?;
    let d = xi.dim();
    let mut m1 = DVector::zeros(d);
    let mut m2 = DMatrix::zeros(d, d);
    for (l, p) in b.points.iter().zip(b.p()) {
        for i in 0..d {
            m1[i] += p * l[i];
            for j in 0..d {
                m2[(i, j)] += p * l[i] * l[j];
            }
        }
    }
    MomentParam::new_unchecked(m1 * (2.0 * PI), m2 * (-PI))
}

/// Shannon entropy `-Σ p log p` by box summation.
pub fn oracle_entropy(xi: &NaturalParam, lat: &Lattice, spec: &BoxSpec) -> Result<f64> {
    let b = BoxPmf::new(xi, lat, spec)?;
    Ok(-b.log_p.iter().map(|lp| lp.exp() * lp).sum::<f64>())
}

/// `Σ p^a q^b` over the box.
fn power_sum(p: &BoxPmf, q: &BoxPmf, a: f64, b: f64) -> f64 {
    p.log_p
        .iter()
        .zip(&q.log_p)
        .map(|(lp, lq)| (a * lp + b * lq).exp())
        .sum()
}

fn need(v: Option<f64>, name: &str) -> Result<f64> {
    v.ok_or_else(|| Error::InvalidParameter(format!("oracle needs {name}")))
}

/// `max_{α∈[0,1]} -log Σ p^α q^{1-α}` by golden-section search.
fn chernoff_information(p: &BoxPmf, q: &BoxPmf) -> f64 {
    let f = |a: f64| -power_sum(p, q, a, 1.0 - a).ln();
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > 1e-12 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        }
    }
    f(0.5 * (lo + hi))
}

/// Divergence `kind` computed from its defining sum over normalized box pmfs.
pub fn oracle_divergence(
    kind: DivergenceKind,
    xi: &NaturalParam,
    xi_prime: &NaturalParam,
    order: &OrderParams,
    lat: &Lattice,
    spec: &BoxSpec,
) -> Result<f64> {
    use DivergenceKind as K;
    let p = BoxPmf::new(xi, lat, spec)?;
    let q = BoxPmf::new(xi_prime, lat, spec)?;
    let value = match kind {
        K::KL => p
            .log_p
            .iter()
            .zip(&q.log_p)
            .map(|(lp, lq)| lp.exp() * (lp - lq))
            .sum(),
        K::Renyi => {
            let a = need(order.alpha, "alpha")?;
            power_sum(&p, &q, a, 1.0 - a).ln() / (a - 1.0)
        }
        K::Bhattacharyya => -power_sum(&p, &q, 0.5, 0.5).ln(),
        K::BhattCoefficient => power_sum(&p, &q, 0.5, 0.5),
        K::SkewedBhattCoefficient => {
            let a = need(order.alpha, "alpha")?;
            power_sum(&p, &q, a, 1.0 - a)
        }
        K::JensenSkew => {
            let a = need(order.alpha, "alpha")?;
            -power_sum(&p, &q, a, 1.0 - a).ln()
        }
        K::IAlphaBeta => power_sum(&p, &q, need(order.alpha, "alpha")?, need(order.beta, "beta")?),
        K::Hellinger2 => {
            0.5 * p
                .p()
                .zip(q.p())
                .map(|(a, b)| (a.sqrt() - b.sqrt()).powi(2))
                .sum::<f64>()
        }
        K::AmariAlpha => {
            let a = need(order.alpha, "alpha")?;
            (1.0 - power_sum(&p, &q, a, 1.0 - a)) / (a * (1.0 - a))
        }
        K::SharmaMittal => {
            let a = need(order.alpha, "alpha")?;
            let b = need(order.beta, "beta")?;
            let s = power_sum(&p, &q, a, 1.0 - a);
            (s.powf((1.0 - b) / (1.0 - a)) - 1.0) / (b - 1.0)
        }
        K::Chernoff => chernoff_information(&p, &q),
        K::Gamma => {
            let g = need(order.gamma, "gamma")?;
            let spp = power_sum(&p, &p, g, 0.0);
            let sqq = power_sum(&q, &q, g, 0.0);
            let spq = power_sum(&p, &q, 1.0, g - 1.0);
            (spp * sqq.powf(g - 1.0) / spq.powf(g)).ln() / (g * (g - 1.0))
        }
        K::Hoelder => {
            let a = need(order.alpha, "alpha")?;
            let b = need(order.beta, "beta")?;
            let g = need(order.gamma, "gamma")?;
            let cross = power_sum(&p, &q, g / a, g / b);
            let rr = power_sum(&p, &p, g, 0.0);
            let ss = power_sum(&q, &q, g, 0.0);
            (cross / (rr.powf(1.0 / a) * ss.powf(1.0 / b))).ln().abs()
        }
        K::CauchySchwarz => {
            let pq = power_sum(&p, &q, 1.0, 1.0);
            let pp = power_sum(&p, &p, 2.0, 0.0);
            let qq = power_sum(&q, &q, 2.0, 0.0);
            -(pq / (pp * qq).sqrt()).ln()
        }
    };
    Ok(value)
}
