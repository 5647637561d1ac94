//! Moment → natural conversion by damped Newton iteration.
//!
//! The unknown is the augmented natural parameter `ψ = (F(ξ), -flat(ξ))`.
//! Its normalization component is refreshed from the theta sum after each
//! accepted step, which leaves `d(d+3)/2` equations `E_ξ[T] = η` whose
//! Jacobian is the covariance of the flattened sufficient statistic.

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::family::Family;
use crate::linalg::check_dim;
use crate::model::{continuous_natural_from_moments, WeightedWindow};
use crate::params::{AugmentedNatural, MomentParam, NaturalParam};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NewtonSettings {
    /// Max-norm tolerance on the moment residual.
    pub tol: f64,
    pub max_iter: usize,
    /// Step halvings tried before giving up on an iteration.
    pub max_halvings: usize,
}

impl Default for NewtonSettings {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_iter: 100,
            max_halvings: 30,
        }
    }
}

impl NewtonSettings {
    pub fn with_tol(tol: f64) -> Self {
        Self {
            tol,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Conversion {
    pub xi: NaturalParam,
    pub psi: AugmentedNatural,
    pub iterations: usize,
    /// Max-norm moment residual at `xi`.
    pub residual: f64,
}

struct State {
    xi: NaturalParam,
    window: WeightedWindow,
    /// `E[T] - η` in flattened coordinates (off-diagonal entries doubled).
    flat_residual: DVector<f64>,
    /// `E[t] - η` entrywise max-norm.
    residual: f64,
}

impl State {
    fn new(family: &Family, xi: NaturalParam, eta: &MomentParam, target: &DVector<f64>) -> Result<Self> {
        let window = WeightedWindow::new(family, &xi)?;
        let residual = window.mean_statistic().distance_inf(eta);
        let flat_residual = flat_mean(&window) - target;
        Ok(Self {
            xi,
            window,
            flat_residual,
            residual,
        })
    }

    fn merit(&self) -> f64 {
        self.flat_residual.norm()
    }
}

fn flat_mean(window: &WeightedWindow) -> DVector<f64> {
    let d = window.point(0).len();
    let n = crate::params::flat_len(d);
    let mut mean = DVector::zeros(n);
    let mut t = DVector::zeros(n);
    for (x, p) in window.iter() {
        crate::model::flat_statistic(x, t.as_mut_slice());
        mean.axpy(p, &t, 1.0);
    }
    mean
}

/// `η` flattened the same way as the statistic `T`.
fn flat_target(eta: &MomentParam) -> DVector<f64> {
    let d = eta.dim();
    let mut v = eta.to_flat();
    let mut k = d;
    for i in 0..d {
        for j in i..d {
            if i != j {
                v[k] *= 2.0;
            }
            k += 1;
        }
    }
    v
}

/// Natural parameter whose moments match `eta`.
pub fn natural_from_moments(
    family: &Family,
    eta: &MomentParam,
    settings: &NewtonSettings,
) -> Result<Conversion> {
    check_dim(family.dim(), eta.dim())?;
    if !(settings.tol > 0.0) {
        return Err(Error::InvalidParameter("tol must be positive".into()));
    }
    let ordinary = eta.to_ordinary()?;
    let start = continuous_natural_from_moments(ordinary.mu(), ordinary.sigma())?.as_discrete()?;
    let target = flat_target(eta);
    let dim = eta.dim();

    let mut state = State::new(family, start, eta, &target)?;
    let mut iterations = 0;
    while state.residual > settings.tol {
        if iterations == settings.max_iter {
            return Err(Error::NoConvergence {
                iterations,
                residual: state.residual,
            });
        }
        iterations += 1;

        let (_, cov) = state.window.flat_statistic_covariance();
        let step = cov
            .cholesky()
            .map(|c| c.solve(&(-&state.flat_residual)))
            .filter(|s| s.iter().all(|v| v.is_finite()))
            .ok_or(Error::SingularHessian)?;

        let base = state.xi.to_flat();
        let mut scale = 1.0;
        let mut saw_interior = false;
        let mut accepted = None;
        for _ in 0..=settings.max_halvings {
            let trial = NaturalParam::from_flat(dim, &(&base + &step * scale));
            if let Ok(xi) = trial {
                saw_interior = true;
                if let Ok(next) = State::new(family, xi, eta, &target) {
                    if next.merit() < state.merit() || next.residual <= settings.tol {
                        accepted = Some(next);
                        break;
                    }
                }
            }
            scale *= 0.5;
        }
        state = match accepted {
            Some(s) => s,
            None if !saw_interior => return Err(Error::DomainExit),
            None => {
                return Err(Error::NoConvergence {
                    iterations,
                    residual: state.residual,
                })
            }
        };
    }

    let psi = AugmentedNatural::new(&state.xi, state.window.log_mass);
    Ok(Conversion {
        xi: state.xi,
        psi,
        iterations,
        residual: state.residual,
    })
}
