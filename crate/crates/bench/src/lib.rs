//! Shared fixtures for the criterion benches.

use latnorm::{Family, Lattice, NaturalParam, TruncationSpec};
use nalgebra::{DMatrix, DVector};

/// A well-conditioned parameter in dimension `d` with mild correlations.
pub fn fixture(d: usize, scale: f64) -> NaturalParam {
    let mut xi2 = DMatrix::<f64>::identity(d, d) * scale;
    for i in 0..d.saturating_sub(1) {
        xi2[(i, i + 1)] = 0.1 * scale;
        xi2[(i + 1, i)] = 0.1 * scale;
    }
    let xi1 = DVector::from_fn(d, |i, _| 0.05 * (i as f64 + 1.0) - 0.1);
    NaturalParam::new(xi1, xi2).expect("fixture is positive definite")
}

pub fn integer_family(d: usize) -> Family {
    Family::new(Lattice::integer(d), TruncationSpec::default())
}

/// The two-dimensional pair used throughout the tests.
pub fn reference_pair() -> (NaturalParam, NaturalParam) {
    (
        NaturalParam::from_slices(&[-0.2, -0.2], &[0.1, 0.0, 0.0, 0.2]).unwrap(),
        NaturalParam::from_slices(&[0.2, 0.2], &[0.15, 0.0, 0.0, 0.25]).unwrap(),
    )
}
