//! Identities, limits and orderings between divergences.

mod common;

use latnorm::divergence::{self as dv, BisectionSettings};
use latnorm::{unnormalized_pmf, Family, NaturalParam};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{reference_pair, rel_err};

fn pair(seed: u64, d: usize) -> (NaturalParam, NaturalParam) {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    (
        common::random_natural(&mut r, d, 0.1, 1.0, 0.5),
        common::random_natural(&mut r, d, 0.1, 1.0, 0.5),
    )
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn renyi_is_nondecreasing_in_order(seed in any::<u64>(), d in 1usize..=2) {
        let (p, q) = pair(seed, d);
        let fam = Family::integer(d);
        let mut prev = 0.0;
        for i in 1..=20 {
            let a = i as f64 / 21.0;
            let v = dv::renyi(&fam, &p, &q, a).unwrap().value;
            prop_assert!(v >= prev - 1e-12, "α = {a}: {v} < {prev}");
            prev = v;
        }
    }

    #[test]
    fn kl_routes_and_cross_entropy_agree(seed in any::<u64>(), d in 1usize..=2) {
        let (p, q) = pair(seed, d);
        let fam = Family::integer(d);
        let a = dv::kl_bregman(&fam, &p, &q).unwrap().value;
        let b = dv::kl_mixed(&fam, &p, &q).unwrap().value;
        let c = latnorm::cross_entropy(&fam, &p, &q).unwrap() - latnorm::entropy(&fam, &p).unwrap();
        prop_assert!(rel_err(a, b) <= 1e-9);
        prop_assert!(rel_err(a, c) <= 1e-9);
        prop_assert!(a >= 0.0);
    }

    #[test]
    fn limits_recover_kl(seed in any::<u64>(), d in 1usize..=2) {
        let (p, q) = pair(seed, d);
        let fam = Family::integer(d);
        let kl = dv::kl_bregman(&fam, &p, &q).unwrap().value;
        let e = 1e-5;
        let r = dv::renyi(&fam, &p, &q, 1.0 - e).unwrap().value;
        let g = dv::gamma_divergence(&fam, &p, &q, 1.0 + e).unwrap().value;
        let s = dv::sharma_mittal(&fam, &p, &q, 1.0 - e, 1.0 - e).unwrap().value;
        prop_assert!((r - kl).abs() <= 1e-3 * (1.0 + kl));
        prop_assert!((g - kl).abs() <= 1e-2 * (1.0 + kl));
        prop_assert!((s - kl).abs() <= 1e-3 * (1.0 + kl));
    }

    #[test]
    fn sharma_mittal_special_cases(seed in any::<u64>(), a in 0.1f64..0.9) {
        let (p, q) = pair(seed, 2);
        let fam = Family::integer(2);
        // β = α: Tsallis divergence (Σ p^α q^{1-α} - 1)/(α - 1).
        let rho = dv::i_alpha_beta(&fam, &p, &q, a, 1.0 - a).unwrap().value;
        let tsallis = (rho - 1.0) / (a - 1.0);
        let sm = dv::sharma_mittal(&fam, &p, &q, a, a).unwrap().value;
        prop_assert!(rel_err(sm, tsallis) <= 1e-10);
        // β → 1: Rényi.
        let near = dv::sharma_mittal(&fam, &p, &q, a, 1.0 - 1e-7).unwrap().value;
        let renyi = dv::renyi(&fam, &p, &q, a).unwrap().value;
        prop_assert!((near - renyi).abs() <= 1e-5 * (1.0 + renyi * renyi));
    }

    #[test]
    fn coefficient_identities(seed in any::<u64>(), d in 1usize..=2) {
        let (p, q) = pair(seed, d);
        let fam = Family::integer(d);
        let bd = dv::bhattacharyya(&fam, &p, &q).unwrap().value;
        let r_half = dv::renyi(&fam, &p, &q, 0.5).unwrap().value;
        prop_assert!(rel_err(bd, 0.5 * r_half) <= 1e-12);
        let bc = dv::bhatt_coefficient(&fam, &p, &q).unwrap().value;
        prop_assert!((bc - (-bd).exp()).abs() <= 1e-12);
        let h2 = dv::hellinger_squared(&fam, &p, &q).unwrap().value;
        prop_assert!((h2 - (1.0 - bc)).abs() <= 1e-12);
        let amari = dv::amari_alpha(&fam, &p, &q, 0.5).unwrap().value;
        prop_assert!((amari - 4.0 * h2).abs() <= 1e-11);
        let hol = dv::hoelder(&fam, &p, &q, 2.0, 2.0, 2.0).unwrap().value;
        let cs = dv::cauchy_schwarz(&fam, &p, &q).unwrap().value;
        prop_assert!((hol - cs).abs() <= 1e-12);
        let j = dv::jensen_skew(&fam, &p, &q, 0.3).unwrap().value;
        let sk = dv::skewed_bhatt_coefficient(&fam, &p, &q, 0.3).unwrap().value;
        prop_assert!((sk - (-j).exp()).abs() <= 1e-12);
    }

    #[test]
    fn chernoff_is_the_upper_envelope(seed in any::<u64>(), d in 1usize..=2) {
        let (p, q) = pair(seed, d);
        let fam = Family::integer(d);
        let c = dv::chernoff(&fam, &p, &q, 1e-9).unwrap();
        prop_assert!(c.gap.abs() <= 1e-9);
        let mut best = f64::NEG_INFINITY;
        for i in 1..100 {
            let a = i as f64 / 100.0;
            let j = dv::jensen_skew(&fam, &p, &q, a).unwrap().value;
            prop_assert!(j <= c.value + 1e-10);
            best = best.max(j);
        }
        // The grid maximum is within a quadratic gap of the optimum.
        prop_assert!(c.value - best <= 1e-3 * (1.0 + c.value));
    }

    #[test]
    fn gamma_is_projective(seed in any::<u64>(), c1 in 0.1f64..10.0, c2 in 0.1f64..10.0) {
        // Recompute the γ-divergence from arbitrarily rescaled unnormalized sums on a box.
        let (p, q) = pair(seed, 1);
        let fam = Family::integer(1);
        let g = 1.7;
        let want = dv::gamma_divergence(&fam, &p, &q, g).unwrap().value;
        let (mut spp, mut sqq, mut spq) = (0.0, 0.0, 0.0);
        for k in -60..=60 {
            let x = [k as f64];
            let a = c1 * unnormalized_pmf(&p, &x);
            let b = c2 * unnormalized_pmf(&q, &x);
            spp += a.powf(g);
            sqq += b.powf(g);
            spq += a * b.powf(g - 1.0);
        }
        let got = (spp.ln() + (g - 1.0) * sqq.ln() - g * spq.ln()) / (g * (g - 1.0));
        prop_assert!(rel_err(got, want) <= 1e-9, "{got} vs {want}");
    }
}

#[test]
fn self_divergences_vanish() {
    let (p, _) = reference_pair();
    let fam = Family::integer(2);
    assert_eq!(dv::kl_bregman(&fam, &p, &p).unwrap().value, 0.0);
    for a in [0.3, 0.7, 2.0] {
        assert!(dv::renyi(&fam, &p, &p, a).unwrap().value.abs() < 1e-14);
    }
    assert!(dv::cauchy_schwarz(&fam, &p, &p).unwrap().value.abs() < 1e-14);
    assert!(dv::gamma_divergence(&fam, &p, &p, 1.5).unwrap().value.abs() < 1e-13);
    assert!((dv::bhatt_coefficient(&fam, &p, &p).unwrap().value - 1.0).abs() < 1e-14);
}

#[test]
fn chernoff_symmetric_pair_splits_evenly() {
    let fam = Family::integer(2);
    let p = NaturalParam::from_slices(&[0.3, -0.1], &[0.4, 0.1, 0.1, 0.3]).unwrap();
    let q = NaturalParam::new(-p.xi1(), p.xi2().clone()).unwrap();
    let c = dv::chernoff_with(&fam, &p, &q, &BisectionSettings::default()).unwrap();
    assert!((c.alpha_star - 0.5).abs() < 1e-6);
    let bd = dv::bhattacharyya(&fam, &p, &q).unwrap().value;
    assert!((c.value - bd).abs() < 1e-10);
}

#[test]
fn left_centroid_is_locally_optimal() {
    let fam = Family::integer(2);
    let mut r = ChaCha8Rng::seed_from_u64(11);
    let set: Vec<NaturalParam> = (0..5)
        .map(|_| common::random_natural(&mut r, 2, 0.1, 1.0, 0.5))
        .collect();
    let c = dv::kl_centroid_left(&set).unwrap();
    let cost = |x: &NaturalParam| -> f64 { set.iter().map(|s| dv::kl_bregman(&fam, x, s).unwrap().value).sum() };
    let best = cost(&c);
    for _ in 0..100 {
        let mut v = c.to_flat();
        for x in v.iter_mut() {
            *x += r.random_range(-1e-3..1e-3);
        }
        let Ok(moved) = NaturalParam::from_flat(2, &v) else { continue };
        assert!(cost(&moved) >= best - 1e-12);
    }
}

#[test]
fn renyi_same_variance_bound_for_integer_locations() {
    // Equality holds for integer offsets at every order; the inequality side
    // is only guaranteed for α > 1.
    let fam = Family::integer(1);
    let two_pi = 2.0 * std::f64::consts::PI;
    for s2 in [0.4, 1.0, 3.0] {
        let xi = |m: f64| NaturalParam::diagonal(&[m / (two_pi * s2)], &[1.0 / (two_pi * s2)]).unwrap();
        for (m1, m2) in [(0.0, 1.0), (-2.0, 1.0), (3.0, 3.0)] {
            for a in [1.5, 2.0, 4.0] {
                let v = dv::renyi(&fam, &xi(m1), &xi(m2), a).unwrap().value;
                assert!(v <= a * (m1 - m2) * (m1 - m2) / (2.0 * s2) + 1e-9);
            }
        }
    }
}

#[test]
fn reference_pair_values() {
    let (p, q) = reference_pair();
    let fam = Family::integer(2);
    let bd = dv::bhattacharyya(&fam, &p, &q).unwrap();
    assert!((bd.value - 1.6259948590224578).abs() < 1e-6);
    assert!(bd.est_abs_error < 1e-9);
    let r = dv::renyi(&fam, &p, &q, 0.9999999999).unwrap();
    assert!((r.value - 7.841371347366552).abs() < 1e-4);
}
