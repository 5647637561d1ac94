//! Parameterizations of discrete normal distributions.
//!
//! A discrete normal on a lattice `Λ` has pmf proportional to
//! `exp(2π(-½ lᵀ ξ2 l + lᵀ ξ1))`. Three coordinate systems are used:
//!
//! | Type | Coordinates | Relation |
//! |------|-------------|----------|
//! | [`NaturalParam`] | `ξ = (ξ1, ξ2)` | exponential-family coordinates, `ξ2` SPD |
//! | [`MomentParam`] | `η = (η1, η2)` | `η = E[t(x)]`, `η1 = 2πμ`, `η2 = -π(Σ + μμᵀ)` |
//! | [`OrdinaryParam`] | `(μ, Σ)` | mean and covariance of the lattice distribution |
//!
//! The sufficient statistic is `t(x) = (2πx, -π x xᵀ)` and the pairing between
//! natural and moment coordinates is `⟨ξ, η⟩ = ξ1ᵀη1 + tr(ξ2 η2)`.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg::{check_dim, check_spd, symmetrize};

/// `ξ2` entry of the standard discrete normal (zero mean, unit variance) on `Z^d`.
pub const XI_STD_DIAG: f64 = 0.1591549;

/// Natural parameter `ξ = (ξ1, ξ2)` with `ξ2` symmetric positive definite.
#[derive(Debug, Clone, PartialEq)]
pub struct NaturalParam {
    xi1: DVector<f64>,
    xi2: DMatrix<f64>,
}

impl NaturalParam {
    pub fn new(xi1: DVector<f64>, xi2: DMatrix<f64>) -> Result<Self> {
        if xi1.is_empty() {
            return Err(Error::InvalidParameter("dimension must be positive".into()));
        }
        check_dim(xi1.len(), xi2.nrows())?;
        check_spd(&xi2, "xi2")?;
        if xi1.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("xi1 has non-finite entries".into()));
        }
        Ok(Self { xi1, xi2 })
    }

    pub fn from_slices(xi1: &[f64], xi2_row_major: &[f64]) -> Result<Self> {
        let d = xi1.len();
        if xi2_row_major.len() != d * d {
            return Err(Error::DimensionMismatch {
                expected: d * d,
                got: xi2_row_major.len(),
            });
        }
        Self::new(
            DVector::from_column_slice(xi1),
            DMatrix::from_row_slice(d, d, xi2_row_major),
        )
    }

    /// Diagonal `ξ2` convenience constructor.
    pub fn diagonal(xi1: &[f64], xi2_diag: &[f64]) -> Result<Self> {
        check_dim(xi1.len(), xi2_diag.len())?;
        Self::new(
            DVector::from_column_slice(xi1),
            DMatrix::from_diagonal(&DVector::from_column_slice(xi2_diag)),
        )
    }

    /// The (approximate) standard discrete normal `(0, 0.1591549·I)`.
    pub fn standard(dim: usize) -> Self {
        Self {
            xi1: DVector::zeros(dim),
            xi2: DMatrix::identity(dim, dim) * XI_STD_DIAG,
        }
    }

    pub fn dim(&self) -> usize {
        self.xi1.len()
    }

    pub fn xi1(&self) -> &DVector<f64> {
        &self.xi1
    }

    pub fn xi2(&self) -> &DMatrix<f64> {
        &self.xi2
    }

    /// `a·self + b·other`, failing with [`Error::Domain`] if the result leaves the
    /// natural parameter space.
    pub fn affine(a: f64, lhs: &Self, b: f64, rhs: &Self) -> Result<Self> {
        check_dim(lhs.dim(), rhs.dim())?;
        let xi1 = &lhs.xi1 * a + &rhs.xi1 * b;
        let xi2 = symmetrize(&(&lhs.xi2 * a + &rhs.xi2 * b));
        check_spd(&xi2, "combined xi2").map_err(|e| match e {
            Error::NotPositiveDefinite(msg) => {
                Error::Domain(format!("{a}·ξ + {b}·ξ' is not a natural parameter: {msg}"))
            }
            other => other,
        })?;
        Ok(Self { xi1, xi2 })
    }

    /// `c·self`, with `c > 0`.
    pub fn scale(&self, c: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::Domain(format!("scale factor {c} must be positive")));
        }
        Ok(Self {
            xi1: &self.xi1 * c,
            xi2: &self.xi2 * c,
        })
    }

    /// Compound inner product `aᵀa' + tr(B'B)`.
    pub fn inner(&self, other: &Self) -> f64 {
        self.xi1.dot(&other.xi1) + (&other.xi2 * &self.xi2).trace()
    }

    /// Pairing `⟨ξ, η⟩ = ξ1ᵀη1 + tr(ξ2 η2)`.
    pub fn pair(&self, eta: &MomentParam) -> f64 {
        self.xi1.dot(eta.eta1()) + (&self.xi2 * eta.eta2()).trace()
    }

    /// Exponent of the unnormalized pmf at `x`: `2π(-½ xᵀξ2x + xᵀξ1)`.
    pub fn log_unnormalized(&self, x: &[f64]) -> f64 {
        let d = self.dim();
        let mut quad = 0.0;
        let mut lin = 0.0;
        for i in 0..d {
            lin += x[i] * self.xi1[i];
            let mut row = 0.0;
            for j in 0..d {
                row += self.xi2[(i, j)] * x[j];
            }
            quad += x[i] * row;
        }
        2.0 * PI * (-0.5 * quad + lin)
    }

    /// Continuous mode `ξ2⁻¹ ξ1` of the unnormalized pmf.
    pub fn mode(&self) -> DVector<f64> {
        let chol = self
            .xi2
            .clone()
            .cholesky()
            .expect("xi2 is positive definite by construction");
        chol.solve(&self.xi1)
    }

    /// Flattened coordinates: `ξ1` followed by the upper triangle of `ξ2`, row by row.
    pub fn to_flat(&self) -> DVector<f64> {
        let d = self.dim();
        let mut v = Vec::with_capacity(flat_len(d));
        v.extend(self.xi1.iter());
        for i in 0..d {
            for j in i..d {
                v.push(self.xi2[(i, j)]);
            }
        }
        DVector::from_vec(v)
    }

    pub fn from_flat(dim: usize, v: &DVector<f64>) -> Result<Self> {
        check_dim(flat_len(dim), v.len())?;
        let xi1 = DVector::from_iterator(dim, v.iter().take(dim).copied());
        let xi2 = unflatten_sym(dim, &v.as_slice()[dim..]);
        Self::new(xi1, xi2)
    }

    /// Max-norm distance in flattened coordinates.
    pub fn distance_inf(&self, other: &Self) -> f64 {
        crate::linalg::inf_norm(&(self.to_flat() - other.to_flat()))
    }
}

/// Number of free coordinates `d(d+3)/2`.
pub fn flat_len(dim: usize) -> usize {
    dim * (dim + 3) / 2
}

pub(crate) fn unflatten_sym(dim: usize, upper: &[f64]) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(dim, dim);
    let mut k = 0;
    for i in 0..dim {
        for j in i..dim {
            m[(i, j)] = upper[k];
            m[(j, i)] = upper[k];
            k += 1;
        }
    }
    m
}

/// Moment (expectation) parameter `η = E[t(x)]`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentParam {
    eta1: DVector<f64>,
    eta2: DMatrix<f64>,
}

impl MomentParam {
    /// Validated constructor: the recovered covariance must be SPD.
    pub fn new(eta1: DVector<f64>, eta2: DMatrix<f64>) -> Result<Self> {
        let m = Self::new_unchecked(eta1, eta2)?;
        check_spd(&m.covariance(), "recovered covariance")?;
        Ok(m)
    }

    /// Builds `η` without requiring a realizable covariance. `eta2` is symmetrized.
    pub fn new_unchecked(eta1: DVector<f64>, eta2: DMatrix<f64>) -> Result<Self> {
        check_dim(eta1.len(), eta2.nrows())?;
        check_dim(eta1.len(), eta2.ncols())?;
        Ok(Self {
            eta1,
            eta2: symmetrize(&eta2),
        })
    }

    pub fn from_ordinary(p: &OrdinaryParam) -> Self {
        let eta1 = p.mu() * (2.0 * PI);
        let eta2 = -(p.sigma() + p.mu() * p.mu().transpose()) * PI;
        Self { eta1, eta2 }
    }

    pub fn dim(&self) -> usize {
        self.eta1.len()
    }

    pub fn eta1(&self) -> &DVector<f64> {
        &self.eta1
    }

    pub fn eta2(&self) -> &DMatrix<f64> {
        &self.eta2
    }

    pub fn mean(&self) -> DVector<f64> {
        &self.eta1 / (2.0 * PI)
    }

    /// `Σ = -η2/π - (η1/2π)(η1/2π)ᵀ`, symmetrized.
    pub fn covariance(&self) -> DMatrix<f64> {
        let mu = self.mean();
        symmetrize(&(-&self.eta2 / PI - &mu * mu.transpose()))
    }

    pub fn to_ordinary(&self) -> Result<OrdinaryParam> {
        OrdinaryParam::new(self.mean(), self.covariance())
    }

    /// Flattened coordinates matching [`NaturalParam::to_flat`].
    pub fn to_flat(&self) -> DVector<f64> {
        let d = self.dim();
        let mut v = Vec::with_capacity(flat_len(d));
        v.extend(self.eta1.iter());
        for i in 0..d {
            for j in i..d {
                v.push(self.eta2[(i, j)]);
            }
        }
        DVector::from_vec(v)
    }

    pub fn distance_inf(&self, other: &Self) -> f64 {
        crate::linalg::inf_norm(&(self.to_flat() - other.to_flat()))
    }
}

/// Ordinary parameter `(μ, Σ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrdinaryParam {
    mu: DVector<f64>,
    sigma: DMatrix<f64>,
}

impl OrdinaryParam {
    pub fn new(mu: DVector<f64>, sigma: DMatrix<f64>) -> Result<Self> {
        check_dim(mu.len(), sigma.nrows())?;
        check_spd(&sigma, "sigma")?;
        Ok(Self { mu, sigma })
    }

    pub fn mu(&self) -> &DVector<f64> {
        &self.mu
    }

    pub fn sigma(&self) -> &DMatrix<f64> {
        &self.sigma
    }

    pub fn dim(&self) -> usize {
        self.mu.len()
    }
}

/// Sufficient statistic `t(x) = (2πx, -π x xᵀ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SufficientStat {
    pub t1: DVector<f64>,
    pub t2: DMatrix<f64>,
}

impl SufficientStat {
    pub fn of(x: &[f64]) -> Self {
        let x = DVector::from_column_slice(x);
        Self {
            t1: &x * (2.0 * PI),
            t2: -(&x * x.transpose()) * PI,
        }
    }

    /// The point `x = t1 / 2π`.
    pub fn point(&self) -> DVector<f64> {
        &self.t1 / (2.0 * PI)
    }

    /// Checks `t2 = -π x xᵀ` for the `x` recovered from `t1`.
    pub fn is_consistent(&self, tol: f64) -> bool {
        let x = self.point();
        let expect = -(&x * x.transpose()) * PI;
        crate::linalg::matrix_inf_norm(&(expect - &self.t2)) <= tol
    }
}

/// Augmented natural parameter `ψ = (F(ξ), -flat(ξ))` of dimension `1 + d(d+3)/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct AugmentedNatural {
    pub psi0: f64,
    pub psi_rest: DVector<f64>,
}

impl AugmentedNatural {
    pub fn new(xi: &NaturalParam, log_normalizer: f64) -> Self {
        Self {
            psi0: log_normalizer,
            psi_rest: -xi.to_flat(),
        }
    }

    pub fn natural(&self, dim: usize) -> Result<NaturalParam> {
        NaturalParam::from_flat(dim, &(-&self.psi_rest))
    }
}

/// Natural parameter `ρ = (Σ⁻¹μ, Σ⁻¹)` of the continuous normal.
#[derive(Debug, Clone, PartialEq)]
pub struct ContinuousNatural {
    pub rho1: DVector<f64>,
    pub rho2: DMatrix<f64>,
}

impl ContinuousNatural {
    /// The discrete natural parameter with the same exponent: `ξ = ρ / 2π`.
    pub fn as_discrete(&self) -> Result<NaturalParam> {
        NaturalParam::new(&self.rho1 / (2.0 * PI), symmetrize(&(&self.rho2 / (2.0 * PI))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_spd() {
        let r = NaturalParam::from_slices(&[0.0, 0.0], &[1.0, 2.0, 2.0, 1.0]);
        assert!(matches!(r, Err(Error::NotPositiveDefinite(_))));
        let r = NaturalParam::from_slices(&[0.0, 0.0], &[1.0, 0.1, 0.0, 1.0]);
        assert!(r.is_err());
        assert!(NaturalParam::from_slices(&[0.0], &[1.0, 0.0]).is_err());
    }

    #[test]
    fn affine_leaves_cone() {
        let a = NaturalParam::diagonal(&[0.0], &[0.1]).unwrap();
        let b = NaturalParam::diagonal(&[0.0], &[1.0]).unwrap();
        assert!(NaturalParam::affine(0.5, &a, 0.5, &b).is_ok());
        // α = 3: 3·0.1 - 2·1.0 < 0
        assert!(matches!(
            NaturalParam::affine(3.0, &a, -2.0, &b),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn flat_round_trip_and_length() {
        let xi = NaturalParam::from_slices(
            &[0.1, -0.2, 0.3],
            &[1.0, 0.1, 0.2, 0.1, 2.0, 0.3, 0.2, 0.3, 3.0],
        )
        .unwrap();
        let flat = xi.to_flat();
        assert_eq!(flat.len(), 9);
        assert_eq!(flat_len(3), 9);
        assert_eq!(NaturalParam::from_flat(3, &flat).unwrap(), xi);
        let psi = AugmentedNatural::new(&xi, 0.7);
        assert_eq!(psi.psi_rest.len(), 9);
        assert_eq!(psi.natural(3).unwrap(), xi);
    }

    #[test]
    fn moment_ordinary_round_trip() {
        let p = OrdinaryParam::new(
            DVector::from_vec(vec![0.3, -0.1]),
            DMatrix::from_row_slice(2, 2, &[0.8, 0.1, 0.1, 1.2]),
        )
        .unwrap();
        let eta = MomentParam::from_ordinary(&p);
        assert!((eta.eta1()[0] - 2.0 * PI * 0.3).abs() < 1e-15);
        let back = eta.to_ordinary().unwrap();
        assert!((back.mu() - p.mu()).norm() < 1e-14);
        assert!((back.sigma() - p.sigma()).norm() < 1e-14);
    }

    #[test]
    fn sufficient_stat_reconstructs() {
        let t = SufficientStat::of(&[2.0, -1.0]);
        assert!(t.is_consistent(1e-12));
        assert!((t.t2[(0, 1)] + PI * -2.0).abs() < 1e-12);
        let bad = SufficientStat {
            t1: t.t1.clone(),
            t2: &t.t2 * 2.0,
        };
        assert!(!bad.is_consistent(1e-9));
    }

    #[test]
    fn inner_product_and_pairing() {
        let a = NaturalParam::from_slices(&[1.0, 2.0], &[1.0, 0.5, 0.5, 2.0]).unwrap();
        let b = NaturalParam::from_slices(&[3.0, -1.0], &[2.0, 0.0, 0.0, 1.0]).unwrap();
        // 3 - 2 + tr([[2,0],[0,1]]·[[1,.5],[.5,2]]) = 1 + 2 + 2
        assert!((a.inner(&b) - 5.0).abs() < 1e-14);
        let x = [1.0, -1.0];
        let t = SufficientStat::of(&x);
        let eta = MomentParam::new_unchecked(t.t1, t.t2).unwrap();
        assert!((a.pair(&eta) - a.log_unnormalized(&x)).abs() < 1e-12);
    }
}
