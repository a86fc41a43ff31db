use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use talex_core::chebyshev::{cheb_s, roots_t_minus_q};
use talex_core::freegroup::fox_derivative;
use talex_core::linkfamilies::{c_words, commutator_relator, B};
use talex_core::repvariety::{riley_poly_c, w21_prime_c};

fn chebyshev(c: &mut Criterion) {
    let mut g = c.benchmark_group("chebyshev");
    for k in [10i64, 30, 60] {
        g.bench_with_input(BenchmarkId::new("gcd", k), &k, |b, &k| {
            b.iter(|| cheb_s(k).gcd(&cheb_s(k * 2 / 3)))
        });
    }
    g.bench_function("roots_t_minus_q/30", |b| {
        b.iter(|| roots_t_minus_q(black_box(30)))
    });
    g.finish();
}

fn fox(c: &mut Criterion) {
    let rel = commutator_relator(&c_words(3, 3, 9).0);
    c.bench_function("fox/commutator C(6,6,-18)", |b| {
        b.iter(|| fox_derivative(black_box(&rel), B))
    });
}

fn riley(c: &mut Criterion) {
    let mut g = c.benchmark_group("riley");
    g.sample_size(10);
    for (m, n, p) in [(1u32, 1u32, 3u32), (3, 1, 5), (3, 1, 9)] {
        let id = format!("{m},{n},{p}");
        g.bench_function(BenchmarkId::new("closed_form", &id), |b| {
            b.iter(|| w21_prime_c(m, n, p))
        });
        g.bench_function(BenchmarkId::new("roots", &id), |b| {
            b.iter(|| riley_poly_c(m, n, p, 1e-9).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, chebyshev, fox, riley);
criterion_main!(benches);
