//! Closed-form divergences between discrete normals on a common lattice.
//!
//! Every formula is evaluated from cumulant values `F = log θ` (never from
//! raw theta values), so large `ξ1` does not overflow.
//!
//! | Kind | Value |
//! |------|-------|
//! | `IAlphaBeta` | `exp(F(αξ+βξ') - αF(ξ) - βF(ξ'))` |
//! | `JensenSkew` | `J_α = αF(ξ) + (1-α)F(ξ') - F(αξ+(1-α)ξ')` |
//! | `Renyi` | `J_α / (1-α)` |
//! | `Bhattacharyya` | `J_{1/2}` |
//! | `Hellinger2` | `1 - exp(-J_{1/2})` |
//! | `AmariAlpha` | `(1 - exp(-J_α)) / (α(1-α))` |
//! | `KL` | Bregman divergence `B_F(ξ' : ξ)` |
//! | `SharmaMittal` | `(exp(-(1-β)/(1-α)·J_α) - 1) / (β-1)` |
//! | `Gamma` | `(F(γξ) + (γ-1)F(γξ') - γF(ξ+(γ-1)ξ')) / (γ(γ-1))` |
//! | `Hoelder` | `|F(γξ)/α + F(γξ')/β - F(γξ/α + γξ'/β)|` |
//! | `CauchySchwarz` | `F(2ξ)/2 + F(2ξ')/2 - F(ξ+ξ')` |
//! | `Chernoff` | `max_α J_α`, located by bisection |
//!
//! The reported `est_abs_error` propagates the theta tail bounds to first
//! order: each `F` term contributes `|coefficient|·tail/θ`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::family::Family;
use crate::linalg::check_dim;
use crate::model::moments_from_natural;
use crate::params::NaturalParam;
use crate::theta::ThetaResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DivergenceKind {
    Renyi,
    KL,
    Bhattacharyya,
    BhattCoefficient,
    SkewedBhattCoefficient,
    Hellinger2,
    AmariAlpha,
    SharmaMittal,
    Chernoff,
    Gamma,
    Hoelder,
    CauchySchwarz,
    JensenSkew,
    IAlphaBeta,
}

impl DivergenceKind {
    pub const ALL: [DivergenceKind; 14] = [
        Self::Renyi,
        Self::KL,
        Self::Bhattacharyya,
        Self::BhattCoefficient,
        Self::SkewedBhattCoefficient,
        Self::Hellinger2,
        Self::AmariAlpha,
        Self::SharmaMittal,
        Self::Chernoff,
        Self::Gamma,
        Self::Hoelder,
        Self::CauchySchwarz,
        Self::JensenSkew,
        Self::IAlphaBeta,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Renyi => "renyi",
            Self::KL => "kl",
            Self::Bhattacharyya => "bhattacharyya",
            Self::BhattCoefficient => "bhatt-coefficient",
            Self::SkewedBhattCoefficient => "skewed-bhatt-coefficient",
            Self::Hellinger2 => "hellinger2",
            Self::AmariAlpha => "amari-alpha",
            Self::SharmaMittal => "sharma-mittal",
            Self::Chernoff => "chernoff",
            Self::Gamma => "gamma",
            Self::Hoelder => "hoelder",
            Self::CauchySchwarz => "cauchy-schwarz",
            Self::JensenSkew => "jensen-skew",
            Self::IAlphaBeta => "i-alpha-beta",
        }
    }

    /// Coefficients (as opposed to divergences) live in `(0, 1]` or `(0, ∞)`.
    pub fn is_coefficient(self) -> bool {
        matches!(
            self,
            Self::BhattCoefficient | Self::SkewedBhattCoefficient | Self::IAlphaBeta
        )
    }
}

impl fmt::Display for DivergenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DivergenceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.to_ascii_lowercase().replace('_', "-");
        Self::ALL
            .iter()
            .copied()
            .find(|k| k.name() == norm)
            .or(match norm.as_str() {
                "hellinger" | "hellinger-squared" => Some(Self::Hellinger2),
                "amari" => Some(Self::AmariAlpha),
                "holder" | "hölder" => Some(Self::Hoelder),
                "cs" => Some(Self::CauchySchwarz),
                "kullback-leibler" => Some(Self::KL),
                _ => None,
            })
            .ok_or_else(|| Error::InvalidParameter(format!("unknown divergence kind '{s}'")))
    }
}

/// Order parameters used by a divergence, where applicable.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct OrderParams {
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub gamma: Option<f64>,
}

impl OrderParams {
    pub fn alpha(alpha: f64) -> Self {
        Self {
            alpha: Some(alpha),
            ..Self::default()
        }
    }

    pub fn alpha_beta(alpha: f64, beta: f64) -> Self {
        Self {
            alpha: Some(alpha),
            beta: Some(beta),
            gamma: None,
        }
    }

    pub fn gamma(gamma: f64) -> Self {
        Self {
            gamma: Some(gamma),
            ..Self::default()
        }
    }

    pub fn all(alpha: f64, beta: f64, gamma: f64) -> Self {
        Self {
            alpha: Some(alpha),
            beta: Some(beta),
            gamma: Some(gamma),
        }
    }

    fn need(v: Option<f64>, name: &str, kind: DivergenceKind) -> Result<f64> {
        v.ok_or_else(|| Error::InvalidParameter(format!("{kind} requires {name}")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DivergenceResult {
    pub value: f64,
    pub kind: DivergenceKind,
    pub order_params: OrderParams,
    pub theta_evals: usize,
    pub est_abs_error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChernoffResult {
    pub value: f64,
    pub alpha_star: f64,
    pub iterations: usize,
    /// `KL(ξ*:ξ) - KL(ξ*:ξ')` at the returned `α*`.
    pub gap: f64,
    pub theta_evals: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BisectionSettings {
    pub tol: f64,
    pub max_iter: usize,
    pub bracket: (f64, f64),
}

impl Default for BisectionSettings {
    fn default() -> Self {
        Self {
            tol: 1e-9,
            max_iter: 200,
            bracket: (1e-6, 1.0 - 1e-6),
        }
    }
}

/// Counts theta evaluations and accumulates the propagated truncation error.
struct Cumulant<'a> {
    family: &'a Family,
    evals: usize,
    error: f64,
}

impl<'a> Cumulant<'a> {
    fn new(family: &'a Family) -> Self {
        Self {
            family,
            evals: 0,
            error: 0.0,
        }
    }

    fn theta(&mut self, xi: &NaturalParam, coef: f64) -> Result<ThetaResult> {
        check_dim(self.family.dim(), xi.dim())?;
        let t = self.family.theta(xi)?;
        self.evals += 1;
        self.error += coef.abs() * t.log_error_bound();
        Ok(t)
    }

    /// `F(ξ)`, recording that it enters the result with weight `coef`.
    fn f(&mut self, xi: &NaturalParam, coef: f64) -> Result<f64> {
        self.theta(xi, coef).map(|t| t.log_value)
    }

    fn finish(self, value: f64, kind: DivergenceKind, order_params: OrderParams, scale: f64) -> DivergenceResult {
        DivergenceResult {
            value,
            kind,
            order_params,
            theta_evals: self.evals,
            est_abs_error: self.error * scale.abs(),
        }
    }
}

fn check_finite(v: f64, name: &str) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} must be finite, got {v}")))
    }
}

/// `J_α(ξ:ξ') = αF(ξ) + (1-α)F(ξ') - F(αξ + (1-α)ξ')` and its error estimate.
fn skew_jensen(c: &mut Cumulant, xi: &NaturalParam, xi_prime: &NaturalParam, alpha: f64) -> Result<f64> {
    check_finite(alpha, "alpha")?;
    let mid = NaturalParam::affine(alpha, xi, 1.0 - alpha, xi_prime)?;
    let fm = c.f(&mid, 1.0)?;
    let f0 = if alpha != 0.0 { c.f(xi, alpha)? } else { 0.0 };
    let f1 = if alpha != 1.0 { c.f(xi_prime, 1.0 - alpha)? } else { 0.0 };
    Ok(alpha * f0 + (1.0 - alpha) * f1 - fm)
}

/// `I_{α,β} = Σ p_ξ^α p_ξ'^β = exp(F(αξ+βξ') - αF(ξ) - βF(ξ'))`.
pub fn i_alpha_beta(
    family: &Family,
    xi: &NaturalParam,
    xi_prime: &NaturalParam,
    alpha: f64,
    beta: f64,
) -> Result<DivergenceResult> {
    check_finite(alpha, "alpha")?;
    check_finite(beta, "beta")?;
    let mut c = Cumulant::new(family);
    let mix = NaturalParam::affine(alpha, xi, beta, xi_prime)?;
    let log_i = c.f(&mix, 1.0)? - alpha * c.f(xi, alpha)? - beta * c.f(xi_prime, beta)?;
    let value = log_i.exp();
    Ok(c.finish(value, DivergenceKind::IAlphaBeta, OrderParams::alpha_beta(alpha, beta), value))
}

/// Skewed Bhattacharyya coefficient `ρ_α = I_{α,1-α}`.
pub fn skewed_bhatt_coefficient(
    family: &Family,
    xi: &NaturalParam,
    xi_prime: &NaturalParam,
    alpha: f64,
) -> Result<DivergenceResult> {
    let mut c = Cumulant::new(family);
    let j = skew_jensen(&mut c, xi, xi_prime, alpha)?;
    let value = (-j).exp();
    Ok(c.finish(value, DivergenceKind::SkewedBhattCoefficient, OrderParams::alpha(alpha), value))
}

/// Skewed Jensen divergence `J_{F,α}(ξ:ξ')`.
pub fn jensen_skew(
    family: &Family,
    xi: &NaturalParam,
    xi_prime: &NaturalParam,
    alpha: f64,
) -> Result<DivergenceResult> {
    let mut c = Cumulant::new(family);
    let j = skew_jensen(&mut c, xi, xi_prime, alpha)?;
    Ok(c.finish(j, DivergenceKind::JensenSkew, OrderParams::alpha(alpha), 1.0))
}

/// Rényi divergence of order `α > 0, α ≠ 1`: `J_α / (1-α)`.
pub fn renyi(family: &Family, xi: &NaturalParam, xi_prime: &NaturalParam, alpha: f64) -> Result<DivergenceResult> {
    if !(alpha > 0.0) || alpha == 1.0 || !alpha.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "Rényi order must be positive and != 1, got {alpha}"
        )));
    }
    let mut c = Cumulant::new(family);
    let j = skew_jensen(&mut c, xi, xi_prime, alpha)?;
    let scale = 1.0 / (1.0 - alpha);
    Ok(c.finish(j * scale, DivergenceKind::Renyi, OrderParams::alpha(alpha), scale))
}

/// Bhattacharyya distance `-log Σ √(p p')`, equal to `J_{1/2}`.
pub fn bhattacharyya(family: &Family, xi: &NaturalParam, xi_prime: &NaturalParam) -> Result<DivergenceResult> {
    let mut c = Cumulant::new(family);
    let j = skew_jensen(&mut c, xi, xi_prime, 0.5)?;
    Ok(c.finish(j, DivergenceKind::Bhattacharyya, OrderParams::default(), 1.0))
}

/// Bhattacharyya coefficient `Σ √(p p') ∈ (0, 1]`.
pub fn bhatt_coefficient(family: &Family, xi: &NaturalParam, xi_prime: &NaturalParam) -> Result<DivergenceResult> {
    let mut c = Cumulant::new(family);
    let j = skew_jensen(&mut c, xi, xi_prime, 0.5)?;
    let value = (-j).exp();
    Ok(c.finish(value, DivergenceKind::BhattCoefficient, OrderParams::default(), value))
}

/// Squared Hellinger distance `1 - Σ √(p p')`.
pub fn hellinger_squared(family: &Family, xi: &NaturalParam, xi_prime: &NaturalParam) -> Result<DivergenceResult> {
    let mut c = Cumulant::new(family);
    let j = skew_jensen(&mut c, xi, xi_prime, 0.5)?;
    let rho = (-j).exp();
    Ok(c.finish(-(-j).exp_m1(), DivergenceKind::Hellinger2, OrderParams::default(), rho))
}

/// Amari α-divergence `(1 - ρ_α) / (α(1-α))` for `α ∉ {0, 1}`.
pub fn amari_alpha(family: &Family, xi: &NaturalParam, xi_prime: &NaturalParam, alpha: f64) -> Result<DivergenceResult> {
    if alpha == 0.0 || alpha == 1.0 || !alpha.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "Amari order must not be 0 or 1, got {alpha}"
        )));
    }
    let mut c = Cumulant::new(family);
    let j = skew_jensen(&mut c, xi, xi_prime, alpha)?;
    let scale = 1.0 / (alpha * (1.0 - alpha));
    let value = -(-j).exp_m1() * scale;
    Ok(c.finish(value, DivergenceKind::AmariAlpha, OrderParams::alpha(alpha), (-j).exp() * scale))
}

/// `KL(p_ξ : p_ξ') = F(ξ') - F(ξ) - ⟨ξ' - ξ, ∇F(ξ)⟩`, with `∇F(ξ)` from the theta gradient.
pub fn kl_bregman(family: &Family, xi: &NaturalParam, xi_prime: &NaturalParam) -> Result<DivergenceResult> {
    let mut c = Cumulant::new(family);
    let t = c.theta(xi, 1.0)?;
    let fp = c.f(xi_prime, 1.0)?;
    let d1 = xi_prime.xi1() - xi.xi1();
    let d2 = xi_prime.xi2() - xi.xi2();
    let inner = d1.dot(&t.dlog_xi1) + (&d2 * &t.dlog_xi2).trace();
    let value = fp - t.log_value - inner;
    Ok(c.finish(value.max(0.0), DivergenceKind::KL, OrderParams::default(), 1.0))
}

/// KL divergence in mixed coordinates: `F(ξ') - F(ξ) - 2πμᵀ(ξ1'-ξ1) + π tr((ξ2'-ξ2)(Σ+μμᵀ))`,
/// with `(μ, Σ)` the moments of `ξ` by direct summation.
pub fn kl_mixed(family: &Family, xi: &NaturalParam, xi_prime: &NaturalParam) -> Result<DivergenceResult> {
    let mut c = Cumulant::new(family);
    let eta = moments_from_natural(family, xi)?;
    let mu = eta.mean();
    let second = eta.covariance() + &mu * mu.transpose();
    let f = c.f(xi, 1.0)?;
    let fp = c.f(xi_prime, 1.0)?;
    let value = fp - f - 2.0 * PI * mu.dot(&(xi_prime.xi1() - xi.xi1()))
        + PI * ((xi_prime.xi2() - xi.xi2()) * second).trace();
    Ok(c.finish(value.max(0.0), DivergenceKind::KL, OrderParams::default(), 1.0))
}

/// Sharma–Mittal divergence `(exp(-(1-β)/(1-α)·J_α) - 1) / (β - 1)`.
pub fn sharma_mittal(
    family: &Family,
    xi: &NaturalParam,
    xi_prime: &NaturalParam,
    alpha: f64,
    beta: f64,
) -> Result<DivergenceResult> {
    if !(alpha > 0.0) || alpha == 1.0 || !alpha.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "Sharma-Mittal alpha must be positive and != 1, got {alpha}"
        )));
    }
    if beta == 1.0 || !beta.is_finite() {
        return Err(Error::InvalidParameter(format!("Sharma-Mittal beta must be != 1, got {beta}")));
    }
    let mut c = Cumulant::new(family);
    let j = skew_jensen(&mut c, xi, xi_prime, alpha)?;
    let k = (1.0 - beta) / (1.0 - alpha);
    let value = (-k * j).exp_m1() / (beta - 1.0);
    let slope = (k * (-k * j).exp() / (beta - 1.0)).abs();
    Ok(c.finish(value, DivergenceKind::SharmaMittal, OrderParams::alpha_beta(alpha, beta), slope))
}

/// Projective γ-divergence, `γ > 1`.
pub fn gamma_divergence(
    family: &Family,
    xi: &NaturalParam,
    xi_prime: &NaturalParam,
    gamma: f64,
) -> Result<DivergenceResult> {
    if !(gamma > 1.0) || !gamma.is_finite() {
        return Err(Error::InvalidParameter(format!("gamma must exceed 1, got {gamma}")));
    }
    let mut c = Cumulant::new(family);
    let a = c.f(&xi.scale(gamma)?, 1.0)?;
    let b = c.f(&xi_prime.scale(gamma)?, gamma - 1.0)?;
    let mix = NaturalParam::affine(1.0, xi, gamma - 1.0, xi_prime)?;
    let m = c.f(&mix, gamma)?;
    let scale = 1.0 / (gamma * (gamma - 1.0));
    let value = (a + (gamma - 1.0) * b - gamma * m) * scale;
    Ok(c.finish(value, DivergenceKind::Gamma, OrderParams::gamma(gamma), scale))
}

/// Projective Hölder divergence with conjugate exponents `1/α + 1/β = 1` and power `γ > 0`.
pub fn hoelder(
    family: &Family,
    xi: &NaturalParam,
    xi_prime: &NaturalParam,
    alpha: f64,
    beta: f64,
    gamma: f64,
) -> Result<DivergenceResult> {
    if !(gamma > 0.0) || !gamma.is_finite() {
        return Err(Error::InvalidParameter(format!("Hölder gamma must be positive, got {gamma}")));
    }
    if !(alpha.is_finite() && beta.is_finite()) || (1.0 / alpha + 1.0 / beta - 1.0).abs() > 1e-12 {
        return Err(Error::ConjugateExponent { alpha, beta });
    }
    let mut c = Cumulant::new(family);
    let a = c.f(&xi.scale(gamma)?, 1.0 / alpha)?;
    let b = c.f(&xi_prime.scale(gamma)?, 1.0 / beta)?;
    let mix = NaturalParam::affine(gamma / alpha, xi, gamma / beta, xi_prime)?;
    let m = c.f(&mix, 1.0)?;
    let value = (a / alpha + b / beta - m).abs();
    Ok(c.finish(value, DivergenceKind::Hoelder, OrderParams::all(alpha, beta, gamma), 1.0))
}

/// Cauchy–Schwarz divergence `½F(2ξ) + ½F(2ξ') - F(ξ+ξ')`.
pub fn cauchy_schwarz(family: &Family, xi: &NaturalParam, xi_prime: &NaturalParam) -> Result<DivergenceResult> {
    let mut c = Cumulant::new(family);
    let a = c.f(&xi.scale(2.0)?, 0.5)?;
    let b = c.f(&xi_prime.scale(2.0)?, 0.5)?;
    let m = c.f(&NaturalParam::affine(1.0, xi, 1.0, xi_prime)?, 1.0)?;
    let value = 0.5 * a + 0.5 * b - m;
    Ok(c.finish(value.max(0.0), DivergenceKind::CauchySchwarz, OrderParams::default(), 1.0))
}

/// Chernoff information with the default bisection settings.
pub fn chernoff(family: &Family, xi: &NaturalParam, xi_prime: &NaturalParam, bisect_tol: f64) -> Result<ChernoffResult> {
    chernoff_with(
        family,
        xi,
        xi_prime,
        &BisectionSettings {
            tol: bisect_tol,
            ..BisectionSettings::default()
        },
    )
}

/// Chernoff information `B_F(ξ:ξ*)` where `ξ* = α*ξ + (1-α*)ξ'` equalizes
/// `KL(ξ*:ξ)` and `KL(ξ*:ξ')` on the exponential geodesic.
pub fn chernoff_with(
    family: &Family,
    xi: &NaturalParam,
    xi_prime: &NaturalParam,
    settings: &BisectionSettings,
) -> Result<ChernoffResult> {
    check_dim(xi.dim(), xi_prime.dim())?;
    if !(settings.tol > 0.0) {
        return Err(Error::InvalidParameter("bisection tolerance must be positive".into()));
    }
    if xi == xi_prime {
        return Err(Error::InvalidParameter("Chernoff information needs distinct parameters".into()));
    }
    let mut c = Cumulant::new(family);
    let f0 = c.f(xi, 1.0)?;
    let f1 = c.f(xi_prime, 1.0)?;
    let d1 = xi.xi1() - xi_prime.xi1();
    let d2 = xi.xi2() - xi_prime.xi2();

    // g(α) = KL(ξ_α:ξ) - KL(ξ_α:ξ') = F(ξ) - F(ξ') - ⟨ξ - ξ', ∇F(ξ_α)⟩, decreasing in α.
    let mut eval = |alpha: f64| -> Result<(f64, NaturalParam, ThetaResult)> {
        let xa = NaturalParam::affine(alpha, xi, 1.0 - alpha, xi_prime)?;
        let t = c.theta(&xa, 1.0)?;
        let g = f0 - f1 - (d1.dot(&t.dlog_xi1) + (&d2 * &t.dlog_xi2).trace());
        Ok((g, xa, t))
    };

    let (mut lo, mut hi) = settings.bracket;
    let (g_lo, ..) = eval(lo)?;
    let (g_hi, ..) = eval(hi)?;
    if !(g_lo > 0.0 && g_hi < 0.0) {
        return Err(Error::NoSignChange { lo: g_lo, hi: g_hi });
    }
    for iterations in 1..=settings.max_iter {
        let mid = 0.5 * (lo + hi);
        let (g, xa, t) = eval(mid)?;
        if g.abs() <= settings.tol {
            let value = f0 - t.log_value
                - ((xi.xi1() - xa.xi1()).dot(&t.dlog_xi1) + ((xi.xi2() - xa.xi2()) * &t.dlog_xi2).trace());
            return Ok(ChernoffResult {
                value: value.max(0.0),
                alpha_star: mid,
                iterations,
                gap: g,
                theta_evals: c.evals,
            });
        }
        if g > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let (g, ..) = eval(0.5 * (lo + hi))?;
    Err(Error::NoSignChange { lo: g, hi: g })
}

/// Left-sided KL centroid: the arithmetic mean of the natural parameters,
/// which minimizes `Σ_i KL(p_c : p_{ξ_i})`.
pub fn kl_centroid_left(params: &[NaturalParam]) -> Result<NaturalParam> {
    let first = params
        .first()
        .ok_or_else(|| Error::InvalidParameter("centroid of an empty set".into()))?;
    let n = params.len() as f64;
    let mut xi1 = first.xi1().clone();
    let mut xi2 = first.xi2().clone();
    for p in &params[1..] {
        check_dim(first.dim(), p.dim())?;
        xi1 += p.xi1();
        xi2 += p.xi2();
    }
    NaturalParam::new(xi1 / n, crate::linalg::symmetrize(&(xi2 / n)))
}

/// Dispatches on `kind`. `Chernoff` returns the Chernoff information value.
pub fn divergence(
    kind: DivergenceKind,
    family: &Family,
    xi: &NaturalParam,
    xi_prime: &NaturalParam,
    order: &OrderParams,
) -> Result<DivergenceResult> {
    use DivergenceKind as K;
    let alpha = || OrderParams::need(order.alpha, "alpha", kind);
    let beta = || OrderParams::need(order.beta, "beta", kind);
    let gamma = || OrderParams::need(order.gamma, "gamma", kind);
    match kind {
        K::Renyi => renyi(family, xi, xi_prime, alpha()?),
        K::KL => kl_bregman(family, xi, xi_prime),
        K::Bhattacharyya => bhattacharyya(family, xi, xi_prime),
        K::BhattCoefficient => bhatt_coefficient(family, xi, xi_prime),
        K::SkewedBhattCoefficient => skewed_bhatt_coefficient(family, xi, xi_prime, alpha()?),
        K::Hellinger2 => hellinger_squared(family, xi, xi_prime),
        K::AmariAlpha => amari_alpha(family, xi, xi_prime, alpha()?),
        K::SharmaMittal => sharma_mittal(family, xi, xi_prime, alpha()?, beta()?),
        K::Chernoff => {
            let r = chernoff(family, xi, xi_prime, BisectionSettings::default().tol)?;
            Ok(DivergenceResult {
                value: r.value,
                kind,
                order_params: OrderParams::alpha(r.alpha_star),
                theta_evals: r.theta_evals,
                est_abs_error: 0.0,
            })
        }
        K::Gamma => gamma_divergence(family, xi, xi_prime, gamma()?),
        K::Hoelder => hoelder(family, xi, xi_prime, alpha()?, beta()?, gamma()?),
        K::CauchySchwarz => cauchy_schwarz(family, xi, xi_prime),
        K::JensenSkew => jensen_skew(family, xi, xi_prime, alpha()?),
        K::IAlphaBeta => i_alpha_beta(family, xi, xi_prime, alpha()?, beta()?),
    }
}
