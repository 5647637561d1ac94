//! Lattices `Λ = L·Z^d + c`, ellipsoid enumeration and truncation control.
//!
//! Enumeration is a Fincke–Pohst style recursion on the Gram matrix
//! `G = Lᵀ·Q·L` of the quadratic form pulled back to integer coordinates.
//! Points are visited in lexicographic order of their integer preimage `z`.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg::{check_dim, check_spd, min_eigenvalue};
use crate::params::NaturalParam;

/// Tolerance used when deciding whether a point lies on the lattice.
const ON_LATTICE_TOL: f64 = 1e-9;

/// Relative slack on the squared radius absorbing rounding on the ellipsoid boundary.
const BOUNDARY_SLACK: f64 = 1e-12;

/// A full-rank lattice `L·Z^d + c`.
#[derive(Debug, Clone, PartialEq)]
pub struct Lattice {
    basis: DMatrix<f64>,
    shift: DVector<f64>,
    basis_inv: DMatrix<f64>,
    identity: bool,
}

impl Lattice {
    /// The integer lattice `Z^d`.
    pub fn integer(dim: usize) -> Self {
        Self {
            basis: DMatrix::identity(dim, dim),
            shift: DVector::zeros(dim),
            basis_inv: DMatrix::identity(dim, dim),
            identity: true,
        }
    }

    pub fn new(basis: DMatrix<f64>, shift: DVector<f64>) -> Result<Self> {
        if !basis.is_square() || basis.nrows() == 0 {
            return Err(Error::InvalidParameter("basis must be a non-empty square matrix".into()));
        }
        check_dim(basis.nrows(), shift.len())?;
        if basis.iter().chain(shift.iter()).any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("lattice has non-finite entries".into()));
        }
        let det = basis.determinant();
        if det.abs() <= f64::EPSILON * basis.norm().powi(basis.nrows() as i32) {
            return Err(Error::InvalidParameter(format!(
                "lattice basis is singular (det = {det:e})"
            )));
        }
        let basis_inv = basis
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::InvalidParameter("lattice basis is singular".into()))?;
        let dim = basis.nrows();
        let identity = basis == DMatrix::identity(dim, dim) && shift.iter().all(|&c| c == 0.0);
        Ok(Self {
            basis,
            shift,
            basis_inv,
            identity,
        })
    }

    pub fn dim(&self) -> usize {
        self.shift.len()
    }

    pub fn basis(&self) -> &DMatrix<f64> {
        &self.basis
    }

    pub fn shift(&self) -> &DVector<f64> {
        &self.shift
    }

    /// True for `Z^d` (identity basis, zero shift).
    pub fn is_integer(&self) -> bool {
        self.identity
    }

    pub fn determinant(&self) -> f64 {
        self.basis.determinant()
    }

    /// The lattice point `L·z + c`.
    pub fn point(&self, z: &[i64]) -> DVector<f64> {
        let mut out = self.shift.clone();
        self.write_point(z, out.as_mut_slice());
        out
    }

    fn write_point(&self, z: &[i64], out: &mut [f64]) {
        let d = self.dim();
        if self.identity {
            for (o, &zi) in out.iter_mut().zip(z) {
                *o = zi as f64;
            }
            return;
        }
        for i in 0..d {
            let mut acc = self.shift[i];
            for j in 0..d {
                acc += self.basis[(i, j)] * z[j] as f64;
            }
            out[i] = acc;
        }
    }

    /// Integer coordinates `z` with `L·z + c = x`, or [`Error::NotOnLattice`].
    pub fn index_of(&self, x: &[f64]) -> Result<Vec<i64>> {
        check_dim(self.dim(), x.len())?;
        let v = DVector::from_column_slice(x) - &self.shift;
        let z = &self.basis_inv * v;
        let rounded: Vec<i64> = z.iter().map(|v| v.round() as i64).collect();
        let back = self.point(&rounded);
        let scale = 1.0 + DVector::from_column_slice(x).amax();
        if (back - DVector::from_column_slice(x)).amax() > ON_LATTICE_TOL * scale {
            return Err(Error::NotOnLattice(x.to_vec()));
        }
        Ok(rounded)
    }
}

/// Accuracy controls for truncated theta sums.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationSpec {
    /// Absolute bound on the omitted tail mass.
    pub eps: f64,
    /// Largest admissible ellipsoid radius.
    pub max_radius: f64,
    /// Largest admissible number of enumerated points.
    pub max_points: usize,
}

impl Default for TruncationSpec {
    fn default() -> Self {
        Self {
            eps: 1e-12,
            max_radius: 200.0,
            max_points: 100_000_000,
        }
    }
}

impl TruncationSpec {
    pub fn with_eps(eps: f64) -> Self {
        Self {
            eps,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.eps > 0.0 && self.eps.is_finite()) {
            return Err(Error::InvalidParameter(format!("eps must be positive, got {}", self.eps)));
        }
        if !(self.max_radius > 0.0) {
            return Err(Error::InvalidParameter("max_radius must be positive".into()));
        }
        if self.max_points == 0 {
            return Err(Error::InvalidParameter("max_points must be at least 1".into()));
        }
        Ok(())
    }
}

/// A point of `Λ` together with its integer preimage.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticePoint {
    pub index: Vec<i64>,
    pub coords: Vec<f64>,
}

/// Quadratic form `Q` restricted to the lattice, factored for enumeration.
struct Enumerator {
    dim: usize,
    /// Center in integer coordinates, `L⁻¹(center - c)`.
    z0: Vec<f64>,
    /// Squared diagonal of the factor, level `k`.
    diag2: Vec<f64>,
    /// `coef[k][m]` for `m < k`: coupling of outer coordinate `m` into level `k`.
    coef: Vec<Vec<f64>>,
}

impl Enumerator {
    fn new(lat: &Lattice, center: &DVector<f64>, form: &DMatrix<f64>) -> Result<Self> {
        let d = lat.dim();
        let gram = lat.basis.transpose() * form * &lat.basis;
        // Reverse the coordinate order so that z_0 is the outermost loop.
        let rev = DMatrix::from_fn(d, d, |i, j| gram[(d - 1 - i, d - 1 - j)]);
        let chol = rev
            .cholesky()
            .ok_or_else(|| Error::NotPositiveDefinite("ellipsoid form".into()))?;
        // rev = R'ᵀR' with R' = lᵀ upper triangular.
        let l = chol.l();
        let r = |i: usize, j: usize| l[(j, i)];
        let mut diag2 = vec![0.0; d];
        let mut coef = vec![Vec::new(); d];
        for k in 0..d {
            let i = d - 1 - k;
            let rii = r(i, i);
            diag2[k] = rii * rii;
            coef[k] = (0..k)
                .map(|m| {
                    let j = d - 1 - m;
                    r(i, j) / rii
                })
                .collect();
        }
        let z0 = &lat.basis_inv * (center - &lat.shift);
        Ok(Self {
            dim: d,
            z0: z0.iter().copied().collect(),
            diag2,
            coef,
        })
    }

    fn run<F>(&self, lat: &Lattice, radius2: f64, max_points: usize, mut visit: F) -> Result<usize>
    where
        F: FnMut(&[i64], &[f64]),
    {
        let d = self.dim;
        let mut z = vec![0i64; d];
        let mut y = vec![0.0f64; d];
        let mut coords = vec![0.0f64; d];
        let mut count = 0usize;
        let budget = radius2 * (1.0 + BOUNDARY_SLACK) + f64::MIN_POSITIVE;
        self.level(0, budget, lat, &mut z, &mut y, &mut coords, &mut count, max_points, &mut visit)?;
        Ok(count)
    }

    #[allow(clippy::too_many_arguments)]
    fn level<F>(
        &self,
        k: usize,
        rem: f64,
        lat: &Lattice,
        z: &mut [i64],
        y: &mut [f64],
        coords: &mut [f64],
        count: &mut usize,
        max_points: usize,
        visit: &mut F,
    ) -> Result<()>
    where
        F: FnMut(&[i64], &[f64]),
    {
        let s: f64 = self.coef[k].iter().zip(y.iter()).map(|(c, yy)| c * yy).sum();
        let half = (rem.max(0.0) / self.diag2[k]).sqrt();
        let lo = (self.z0[k] - s - half).ceil();
        let hi = (self.z0[k] - s + half).floor();
        if !(lo.is_finite() && hi.is_finite()) || hi - lo > 1e15 {
            return Err(Error::PointBudgetExceeded { limit: max_points });
        }
        let mut zk = lo;
        while zk <= hi {
            let yk = zk - self.z0[k];
            let t = yk + s;
            let next = rem - self.diag2[k] * t * t;
            if next >= 0.0 {
                z[k] = zk as i64;
                y[k] = yk;
                if k + 1 == self.dim {
                    *count += 1;
                    if *count > max_points {
                        return Err(Error::PointBudgetExceeded { limit: max_points });
                    }
                    lat.write_point(z, coords);
                    visit(z, coords);
                } else {
                    self.level(k + 1, next, lat, z, y, coords, count, max_points, visit)?;
                }
            }
            zk += 1.0;
        }
        Ok(())
    }
}

/// Visits every `l ∈ Λ` with `(l - center)ᵀ form (l - center) ≤ radius²`, in
/// lexicographic order of the integer preimage. Returns the number of points.
pub fn for_each_in_ellipsoid<F>(
    lat: &Lattice,
    center: &DVector<f64>,
    form: &DMatrix<f64>,
    radius: f64,
    max_points: usize,
    visit: F,
) -> Result<usize>
where
    F: FnMut(&[i64], &[f64]),
{
    check_dim(lat.dim(), center.len())?;
    check_dim(lat.dim(), form.nrows())?;
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::InvalidParameter(format!("radius must be positive, got {radius}")));
    }
    let e = Enumerator::new(lat, center, form)?;
    e.run(lat, radius * radius, max_points, visit)
}

/// Collects the lattice points inside the ellipsoid; see [`for_each_in_ellipsoid`].
pub fn enumerate_ellipsoid(
    lat: &Lattice,
    center: &DVector<f64>,
    form: &DMatrix<f64>,
    radius: f64,
    max_points: usize,
) -> Result<Vec<LatticePoint>> {
    check_spd(form, "ellipsoid form")?;
    let mut out = Vec::new();
    for_each_in_ellipsoid(lat, center, form, radius, max_points, |z, x| {
        out.push(LatticePoint {
            index: z.to_vec(),
            coords: x.to_vec(),
        })
    })?;
    Ok(out)
}

/// The ellipsoid used to truncate a theta sum and the bound on what it omits.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncationWindow {
    /// Continuous mode `ξ2⁻¹ξ1` of the summand.
    pub center: DVector<f64>,
    pub radius: f64,
    /// Natural log of the bound on the omitted mass.
    pub log_tail_bound: f64,
}

impl TruncationWindow {
    pub fn tail_bound(&self) -> f64 {
        self.log_tail_bound.exp()
    }
}

/// Quantities shared by tail bounds for one `(Λ, ξ)` pair.
struct TailModel {
    center: DVector<f64>,
    /// `log max_l term(l) ≤ π ξ1ᵀ ξ2⁻¹ ξ1`.
    log_peak: f64,
    /// Smallest eigenvalue of `Lᵀ ξ2 L`.
    lambda_min: f64,
    dim: f64,
}

impl TailModel {
    fn new(lat: &Lattice, xi: &NaturalParam) -> Self {
        let center = xi.mode();
        let log_peak = PI * xi.xi1().dot(&center);
        let gram = lat.basis.transpose() * xi.xi2() * &lat.basis;
        Self {
            center,
            log_peak,
            lambda_min: min_eigenvalue(&gram),
            dim: lat.dim() as f64,
        }
    }

    /// `log` of the bound `K·e^{-π(1-δ)R²}·(1 + 1/√(δλ))^d` for one split `δ ∈ (0,1)`.
    ///
    /// Outside the ellipsoid `e^{-πq} ≤ e^{-π(1-δ)R²}·e^{-πδλ‖z-z0‖²}` and the
    /// shifted 1D Gaussian sum obeys `Σ_k e^{-a(k-x)²} ≤ 1 + √(π/a)`.
    fn log_bound(&self, radius2: f64, delta: f64) -> f64 {
        self.log_peak - PI * (1.0 - delta) * radius2
            + self.dim * (1.0 / (delta * self.lambda_min).sqrt()).ln_1p()
    }

    fn best_log_bound(&self, radius2: f64) -> f64 {
        deltas().map(|d| self.log_bound(radius2, d)).fold(f64::INFINITY, f64::min)
    }

    fn radius2_for(&self, log_eps: f64) -> f64 {
        deltas()
            .map(|delta| {
                let num = self.log_peak + self.dim * (1.0 / (delta * self.lambda_min).sqrt()).ln_1p()
                    - log_eps;
                num / (PI * (1.0 - delta))
            })
            .fold(f64::INFINITY, f64::min)
    }
}

fn deltas() -> impl Iterator<Item = f64> {
    // log-spaced split points in [1e-4, 0.95]
    const N: usize = 120;
    let (lo, hi) = (1e-4f64.ln(), 0.95f64.ln());
    (0..N).map(move |i| (lo + (hi - lo) * i as f64 / (N - 1) as f64).exp())
}

/// Radius of the ellipsoid (in the `ξ2` metric, centered at `ξ2⁻¹ξ1`) whose
/// complement carries at most `spec.eps` of the theta mass on `lat`.
pub fn truncation_window(
    lat: &Lattice,
    xi: &NaturalParam,
    spec: &TruncationSpec,
) -> Result<TruncationWindow> {
    spec.validate()?;
    check_dim(lat.dim(), xi.dim())?;
    let model = TailModel::new(lat, xi);
    // A small margin keeps the reported bound at or below eps after rounding.
    let mut r2 = model.radius2_for(spec.eps.ln() - 1e-9).max(0.0);
    // The window must contain at least the lattice point nearest the center.
    let z0 = &lat.basis_inv * (&model.center - &lat.shift);
    let nearest: Vec<i64> = z0.iter().map(|v| v.round() as i64).collect();
    let diff = lat.point(&nearest) - &model.center;
    let q_nearest = (diff.transpose() * xi.xi2() * &diff)[(0, 0)];
    r2 = r2.max(q_nearest * (1.0 + 1e-9) + 1e-12);
    let radius = r2.sqrt();
    if radius > spec.max_radius {
        return Err(Error::RadiusCapExceeded {
            radius,
            cap: spec.max_radius,
        });
    }
    let log_tail_bound = model.best_log_bound(r2);
    Ok(TruncationWindow {
        center: model.center,
        radius,
        log_tail_bound,
    })
}

/// Truncation radius on `Z^d`; see [`truncation_window`].
pub fn truncation_radius(xi2: &DMatrix<f64>, xi1: &DVector<f64>, spec: &TruncationSpec) -> Result<f64> {
    let xi = NaturalParam::new(xi1.clone(), xi2.clone())?;
    truncation_window(&Lattice::integer(xi.dim()), &xi, spec).map(|w| w.radius)
}
