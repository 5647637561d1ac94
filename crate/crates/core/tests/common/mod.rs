#![allow(dead_code)]

use latnorm::NaturalParam;
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `Q·diag(λ)·Qᵀ` with `λ` uniform in `[lo, hi]` and `Q` a random rotation.
pub fn random_spd(rng: &mut impl Rng, d: usize, lo: f64, hi: f64) -> DMatrix<f64> {
    let g = DMatrix::from_fn(d, d, |_, _| rng.sample::<f64, _>(StandardNormal));
    let q = g.qr().q();
    let lambda = DVector::from_fn(d, |_, _| rng.random_range(lo..=hi));
    let m = &q * DMatrix::from_diagonal(&lambda) * q.transpose();
    (&m + m.transpose()) * 0.5
}

/// ξ with `ξ2` eigenvalues in `[lo, hi]` and `‖ξ1‖∞ ≤ b`.
pub fn random_natural(rng: &mut impl Rng, d: usize, lo: f64, hi: f64, b: f64) -> NaturalParam {
    let xi2 = random_spd(rng, d, lo, hi);
    let xi1 = DVector::from_fn(d, |_, _| rng.random_range(-b..=b));
    NaturalParam::new(xi1, xi2).unwrap()
}

pub fn reference_pair() -> (NaturalParam, NaturalParam) {
    (
        NaturalParam::diagonal(&[-0.2, -0.2], &[0.1, 0.2]).unwrap(),
        NaturalParam::diagonal(&[0.2, 0.2], &[0.15, 0.25]).unwrap(),
    )
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

/// Pearson χ² p-value of 1-D integer draws against `pmf` on `lo..=hi`.
///
/// The end bins absorb the mass beyond the window; sparse bins are merged
/// from the outside in until every expected count is at least 5.
pub fn chi_square_pvalue(draws: &[i64], lo: i64, hi: i64, pmf: impl Fn(i64) -> f64) -> (f64, usize) {
    use statrs::distribution::{ChiSquared, ContinuousCDF};
    let n = draws.len() as f64;
    let width = (hi - lo + 1) as usize;
    let mut expected: Vec<f64> = (lo..=hi).map(|k| n * pmf(k)).collect();
    let inside: f64 = expected.iter().sum();
    let outside = (n - inside).max(0.0);
    expected[0] += outside / 2.0;
    expected[width - 1] += outside / 2.0;
    let mut observed = vec![0.0; width];
    for &x in draws {
        observed[(x.clamp(lo, hi) - lo) as usize] += 1.0;
    }
    let merge = |e: &mut Vec<f64>, o: &mut Vec<f64>| {
        while e.len() > 2 && e[0] < 5.0 {
            let (e0, o0) = (e.remove(0), o.remove(0));
            e[0] += e0;
            o[0] += o0;
        }
        while e.len() > 2 && e[e.len() - 1] < 5.0 {
            let (e1, o1) = (e.pop().unwrap(), o.pop().unwrap());
            *e.last_mut().unwrap() += e1;
            *o.last_mut().unwrap() += o1;
        }
    };
    merge(&mut expected, &mut observed);
    let stat: f64 = expected
        .iter()
        .zip(&observed)
        .map(|(e, o)| (o - e) * (o - e) / e)
        .sum();
    let df = expected.len() - 1;
    let p = ChiSquared::new(df as f64).unwrap().sf(stat);
    (p, df)
}
