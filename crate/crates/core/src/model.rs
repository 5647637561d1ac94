//! Pmf, moments, entropies, MLE and Fisher information of discrete normals.
//!
//! Expectations are computed by weighted summation over the truncation window
//! of the theta sum. This is deliberately a separate path from the gradient
//! accumulated by [`crate::theta::theta`], so the two can be checked against
//! each other.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::family::Family;
use crate::lattice::{for_each_in_ellipsoid, truncation_window};
use crate::linalg::{check_dim, check_spd, log_sum_exp, symmetrize};
use crate::params::{flat_len, ContinuousNatural, MomentParam, NaturalParam, OrdinaryParam};

/// Lattice points of the truncation window with their normalized probabilities.
#[derive(Debug, Clone)]
pub struct WeightedWindow {
    dim: usize,
    coords: Vec<f64>,
    index: Vec<i64>,
    /// Probabilities renormalized over the window.
    pub probs: Vec<f64>,
    /// `log Σ_window p̃`.
    pub log_mass: f64,
    pub log_tail_bound: f64,
}

impl WeightedWindow {
    pub fn new(family: &Family, xi: &NaturalParam) -> Result<Self> {
        check_dim(family.dim(), xi.dim())?;
        let window = truncation_window(&family.lattice, xi, &family.spec)?;
        let d = xi.dim();
        let mut coords = Vec::new();
        let mut index = Vec::new();
        let mut exps = Vec::new();
        for_each_in_ellipsoid(
            &family.lattice,
            &window.center,
            xi.xi2(),
            window.radius,
            family.spec.max_points,
            |z, l| {
                coords.extend_from_slice(l);
                index.extend_from_slice(z);
                exps.push(xi.log_unnormalized(l));
            },
        )?;
        let log_mass = log_sum_exp(&exps);
        let probs = exps.iter().map(|e| (e - log_mass).exp()).collect();
        Ok(Self {
            dim: d,
            coords,
            index,
            probs,
            log_mass,
            log_tail_bound: window.log_tail_bound,
        })
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    #[allow(clippy::should_implement_trait)]
    pub fn index(&self, i: usize) -> &[i64] {
        &self.index[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[f64], f64)> + '_ {
        self.coords.chunks_exact(self.dim).zip(self.probs.iter().copied())
    }

    /// `E[f(x)]` under the window distribution.
    pub fn expect<F: Fn(&[f64]) -> f64>(&self, f: F) -> f64 {
        self.iter().map(|(x, p)| p * f(x)).sum()
    }

    /// Mean of `t(x) = (2πx, -πxxᵀ)` over the window.
    pub fn mean_statistic(&self) -> MomentParam {
        let d = self.dim;
        let mut m1 = DVector::zeros(d);
        let mut m2 = DMatrix::zeros(d, d);
        for (x, p) in self.iter() {
            for i in 0..d {
                m1[i] += p * x[i];
                for j in 0..d {
                    m2[(i, j)] += p * x[i] * x[j];
                }
            }
        }
        MomentParam::new_unchecked(m1 * (2.0 * PI), m2 * (-PI)).expect("dimensions agree")
    }

    /// Covariance of the flattened statistic `T(x)`, paired with
    /// [`NaturalParam::to_flat`] so that `⟨ξ, t(x)⟩ = flat(ξ)ᵀ T(x)`.
    pub fn flat_statistic_covariance(&self) -> (DVector<f64>, DMatrix<f64>) {
        let n = flat_len(self.dim);
        let mut mean = DVector::zeros(n);
        let mut second = DMatrix::zeros(n, n);
        let mut t = DVector::zeros(n);
        for (x, p) in self.iter() {
            flat_statistic(x, t.as_mut_slice());
            mean.axpy(p, &t, 1.0);
            second.ger(p, &t, &t, 1.0);
        }
        let cov = symmetrize(&(second - &mean * mean.transpose()));
        (mean, cov)
    }
}

/// `T(x)`: `2πx`, then `-π x_i x_j` for `i ≤ j` with off-diagonal entries doubled.
pub(crate) fn flat_statistic(x: &[f64], out: &mut [f64]) {
    let d = x.len();
    for i in 0..d {
        out[i] = 2.0 * PI * x[i];
    }
    let mut k = d;
    for i in 0..d {
        for j in i..d {
            let f = if i == j { 1.0 } else { 2.0 };
            out[k] = -PI * f * x[i] * x[j];
            k += 1;
        }
    }
}

/// `exp(2π(-½ lᵀξ2 l + lᵀξ1))`.
pub fn unnormalized_pmf(xi: &NaturalParam, l: &[f64]) -> f64 {
    xi.log_unnormalized(l).exp()
}

/// `p_ξ(l)` for `l ∈ Λ`.
pub fn pmf(family: &Family, xi: &NaturalParam, l: &[f64]) -> Result<f64> {
    log_pmf(family, xi, l).map(f64::exp)
}

pub fn log_pmf(family: &Family, xi: &NaturalParam, l: &[f64]) -> Result<f64> {
    check_dim(xi.dim(), l.len())?;
    family.lattice.index_of(l)?;
    Ok(xi.log_unnormalized(l) - family.log_theta(xi)?)
}

/// Moment parameter `η = E_ξ[t(x)]`, by direct weighted summation.
pub fn moments_from_natural(family: &Family, xi: &NaturalParam) -> Result<MomentParam> {
    Ok(WeightedWindow::new(family, xi)?.mean_statistic())
}

/// Shannon entropy `F(ξ) - ⟨ξ, η⟩`.
pub fn entropy(family: &Family, xi: &NaturalParam) -> Result<f64> {
    cross_entropy(family, xi, xi)
}

/// Cross-entropy `-Σ p_ξ log p_ξ' = F(ξ') - ⟨ξ', η(ξ)⟩`.
pub fn cross_entropy(family: &Family, xi: &NaturalParam, xi_prime: &NaturalParam) -> Result<f64> {
    check_dim(xi.dim(), xi_prime.dim())?;
    let eta = moments_from_natural(family, xi)?;
    Ok(family.log_theta(xi_prime)? - xi_prime.pair(&eta))
}

/// Average sufficient statistic `(1/n) Σ t(x_i)` with no realizability check.
pub fn mean_sufficient_statistic<P: AsRef<[f64]>>(samples: &[P]) -> Result<MomentParam> {
    let first = samples
        .first()
        .ok_or_else(|| Error::InvalidParameter("sample list is empty".into()))?;
    let d = first.as_ref().len();
    if d == 0 {
        return Err(Error::InvalidParameter("samples have dimension 0".into()));
    }
    let mut s1 = DVector::zeros(d);
    let mut s2 = DMatrix::zeros(d, d);
    for x in samples {
        let x = x.as_ref();
        check_dim(d, x.len())?;
        for i in 0..d {
            s1[i] += x[i];
            for j in 0..d {
                s2[(i, j)] += x[i] * x[j];
            }
        }
    }
    let n = samples.len() as f64;
    MomentParam::new_unchecked(s1 * (2.0 * PI / n), s2 * (-PI / n))
}

/// Maximum likelihood estimate `η̂ = (1/n) Σ t(x_i)`.
///
/// Fails with [`Error::DegenerateSample`] when the sample covariance is not
/// positive definite, since such an `η̂` has no natural parameter.
pub fn mle<P: AsRef<[f64]>>(samples: &[P]) -> Result<MomentParam> {
    let eta = mean_sufficient_statistic(samples)?;
    check_spd(&eta.covariance(), "sample covariance").map_err(|_| Error::DegenerateSample)?;
    Ok(eta)
}

/// Hessian of `log θ` in `(ξ1, ξ2)` for `d = 1`: the covariance of `(2πx, -πx²)`.
pub fn fisher_info_1d(family: &Family, xi: &NaturalParam) -> Result<DMatrix<f64>> {
    if xi.dim() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            got: xi.dim(),
        });
    }
    let w = WeightedWindow::new(family, xi)?;
    let m = |k: i32| w.expect(|x| x[0].powi(k));
    let (m1, m2, m3, m4) = (m(1), m(2), m(3), m(4));
    let a = 4.0 * PI * PI * (m2 - m1 * m1);
    let b = -2.0 * PI * PI * (m3 - m1 * m2);
    let c = PI * PI * (m4 - m2 * m2);
    Ok(DMatrix::from_row_slice(2, 2, &[a, b, b, c]))
}

/// `ρ = (Σ⁻¹μ, Σ⁻¹)` of the continuous normal `N(μ, Σ)`.
pub fn continuous_natural_from_moments(
    mu: &DVector<f64>,
    sigma: &DMatrix<f64>,
) -> Result<ContinuousNatural> {
    let p = OrdinaryParam::new(mu.clone(), sigma.clone())?;
    let chol = p
        .sigma()
        .clone()
        .cholesky()
        .ok_or_else(|| Error::NotPositiveDefinite("sigma".into()))?;
    let rho2 = symmetrize(&chol.inverse());
    let rho1 = chol.solve(p.mu());
    Ok(ContinuousNatural { rho1, rho2 })
}
