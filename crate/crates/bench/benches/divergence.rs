use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use latnorm::divergence::{chernoff, divergence};
use latnorm::sampling::{sample_exact_eps, sample_h2};
use latnorm::{DivergenceKind, OrderParams, RandomState};
use latnorm_bench::{integer_family, reference_pair};

fn divergences(c: &mut Criterion) {
    let fam = integer_family(2);
    let (p, q) = reference_pair();
    let order = OrderParams::all(0.3, 0.6, 1.5);
    let conjugate = OrderParams::all(1.5, 3.0, 1.5);
    let mut g = c.benchmark_group("divergence");
    for kind in DivergenceKind::ALL {
        if kind == DivergenceKind::Chernoff {
            continue;
        }
        let o = if kind == DivergenceKind::Hoelder { &conjugate } else { &order };
        g.bench_function(kind.name(), |b| {
            b.iter(|| divergence(kind, &fam, black_box(&p), black_box(&q), o).unwrap().value)
        });
    }
    g.finish();
    c.bench_function("chernoff", |b| b.iter(|| chernoff(&fam, black_box(&p), &q, 1e-9).unwrap().value));
}

fn sampling(c: &mut Criterion) {
    let fam = integer_family(2);
    let (p, _) = reference_pair();
    c.bench_function("sample_exact/1000", |b| {
        let mut rng = RandomState::new(1);
        b.iter(|| sample_exact_eps(&fam, &p, 1000, 1e-12, &mut rng).unwrap())
    });
    c.bench_function("sample_h2/1000", |b| {
        let mut rng = RandomState::new(1);
        b.iter(|| sample_h2(&fam, &p, 1000, &mut rng).unwrap())
    });
}

criterion_group!(benches, divergences, sampling);
criterion_main!(benches);
