//! Sampling from discrete and lattice normals.
//!
//! * [`sample_exact_eps`]: categorical draw from the pmf renormalized on a
//!   truncation window holding all but `eps` of the relative mass.
//! * [`sample_h1`]: round a continuous normal draw to the nearest point of `Z^d`.
//!   Biased in general; the moments of the output differ from `(μ, Σ)`.
//! * [`sample_h2`]: accept–reject over the window, proposing uniformly and
//!   accepting with probability `p̃(l) / max_window p̃`.

use nalgebra::{DMatrix, DVector};
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::family::Family;
use crate::lattice::TruncationSpec;
use crate::linalg::check_dim;
use crate::model::{mean_sufficient_statistic, WeightedWindow};
use crate::params::{MomentParam, NaturalParam, OrdinaryParam};

/// Proposals allowed per requested sample before [`Error::AcceptanceStall`].
const H2_PROPOSALS_PER_SAMPLE: usize = 10_000;

/// Seeded generator; equal seeds give equal streams.
#[derive(Debug, Clone)]
pub struct RandomState {
    seed: u64,
    rng: ChaCha20Rng,
}

impl RandomState {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            rng: ChaCha20Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn rng(&mut self) -> &mut ChaCha20Rng {
        &mut self.rng
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleMethod {
    ExactEps,
    H1Round,
    H2Reject,
}

impl SampleMethod {
    pub fn name(self) -> &'static str {
        match self {
            Self::ExactEps => "exact",
            Self::H1Round => "h1",
            Self::H2Reject => "h2",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampleBatch {
    /// Sampled lattice points.
    pub points: Vec<Vec<f64>>,
    /// Integer preimages `z` with `point = L·z + c`.
    pub indices: Vec<Vec<i64>>,
    pub method: SampleMethod,
    /// Fraction of accepted proposals (rejection sampling only).
    pub accept_rate: Option<f64>,
}

impl SampleBatch {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

fn check_count(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidParameter("sample count must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// Window whose omitted mass is at most `eps` relative to `θ`.
fn relative_window(family: &Family, xi: &NaturalParam, eps: f64) -> Result<WeightedWindow> {
    let spec = TruncationSpec { eps, ..family.spec };
    let window = WeightedWindow::new(&family.with_spec(spec), xi)?;
    if window.log_tail_bound - window.log_mass <= eps.ln() {
        return Ok(window);
    }
    // θ ≥ window mass, so an absolute bound of eps·mass is relative eps.
    let spec = TruncationSpec {
        eps: eps * window.log_mass.exp(),
        ..spec
    };
    WeightedWindow::new(&family.with_spec(spec), xi)
}

/// Draws `n` points within total variation `eps` of `p_ξ`.
pub fn sample_exact_eps(
    family: &Family,
    xi: &NaturalParam,
    n: usize,
    eps: f64,
    rng: &mut RandomState,
) -> Result<SampleBatch> {
    check_count(n)?;
    check_dim(family.dim(), xi.dim())?;
    let window = relative_window(family, xi, eps)?;
    let dist = WeightedIndex::new(&window.probs)
        .map_err(|e| Error::InvalidParameter(format!("window weights: {e}")))?;
    let mut points = Vec::with_capacity(n);
    let mut indices = Vec::with_capacity(n);
    for _ in 0..n {
        let i = dist.sample(rng.rng());
        points.push(window.point(i).to_vec());
        indices.push(window.index(i).to_vec());
    }
    Ok(SampleBatch {
        points,
        indices,
        method: SampleMethod::ExactEps,
        accept_rate: None,
    })
}

/// Nearest point of `Z^d`, rounding halves to even in every coordinate.
pub fn nearest_integer_point(x: &[f64]) -> Vec<i64> {
    x.iter().map(|v| v.round_ties_even() as i64).collect()
}

/// Heuristic H1: round draws of `N(μ, Σ)` to `Z^d`.
pub fn sample_h1(
    mu: &DVector<f64>,
    sigma: &DMatrix<f64>,
    n: usize,
    rng: &mut RandomState,
) -> Result<SampleBatch> {
    check_count(n)?;
    let p = OrdinaryParam::new(mu.clone(), sigma.clone())?;
    let chol = p
        .sigma()
        .clone()
        .cholesky()
        .ok_or_else(|| Error::NotPositiveDefinite("sigma".into()))?;
    let l = chol.l();
    let d = p.dim();
    let mut points = Vec::with_capacity(n);
    let mut indices = Vec::with_capacity(n);
    let mut z = DVector::zeros(d);
    for _ in 0..n {
        for zi in z.iter_mut() {
            *zi = rng.rng().sample(StandardNormal);
        }
        let x = p.mu() + &l * &z;
        let idx = nearest_integer_point(x.as_slice());
        points.push(idx.iter().map(|&v| v as f64).collect());
        indices.push(idx);
    }
    Ok(SampleBatch {
        points,
        indices,
        method: SampleMethod::H1Round,
        accept_rate: None,
    })
}

/// Heuristic H2: accept–reject over the theta ellipsoid points. Accepted points
/// follow `p_ξ` restricted to the window.
pub fn sample_h2(
    family: &Family,
    xi: &NaturalParam,
    n: usize,
    rng: &mut RandomState,
) -> Result<SampleBatch> {
    check_count(n)?;
    check_dim(family.dim(), xi.dim())?;
    let window = WeightedWindow::new(family, xi)?;
    let peak = window.probs.iter().copied().fold(0.0, f64::max);
    let m = window.len();
    let budget = n.saturating_mul(H2_PROPOSALS_PER_SAMPLE);
    let mut points = Vec::with_capacity(n);
    let mut indices = Vec::with_capacity(n);
    let mut proposals = 0usize;
    while points.len() < n {
        if proposals == budget {
            return Err(Error::AcceptanceStall {
                accepted: points.len(),
                requested: n,
                proposals,
            });
        }
        proposals += 1;
        let i = rng.rng().random_range(0..m);
        let u: f64 = rng.rng().random();
        if u * peak < window.probs[i] {
            points.push(window.point(i).to_vec());
            indices.push(window.index(i).to_vec());
        }
    }
    Ok(SampleBatch {
        points,
        indices,
        method: SampleMethod::H2Reject,
        accept_rate: Some(n as f64 / proposals as f64),
    })
}

/// `η̃ = (1/m) Σ t(x_i)` over a batch, without a realizability check.
pub fn empirical_moments(batch: &SampleBatch) -> Result<MomentParam> {
    mean_sufficient_statistic(&batch.points)
}
