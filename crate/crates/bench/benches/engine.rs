use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use talex_bench::instance;
use talex_core::twisted::{twisted_alexander, twisted_alexander_fastpath, EngineConfig};
use talex_core::{FamilySpec, Orientation};

fn paths(c: &mut Criterion) {
    let cfg = EngineConfig::default();
    let mut g = c.benchmark_group("twisted");
    for family in [
        FamilySpec::j(1, 1).unwrap(),
        FamilySpec::j(3, 3).unwrap(),
        FamilySpec::c(3, 1, 5).unwrap(),
    ] {
        let inst = instance(family, Orientation::DEFAULT);
        let id = family.to_string();
        g.bench_function(BenchmarkId::new("general", &id), |b| {
            b.iter(|| twisted_alexander(&inst.pres, &inst.rep, 0, &cfg).unwrap())
        });
        let w = inst.family.word_w();
        g.bench_function(BenchmarkId::new("fastpath", &id), |b| {
            b.iter(|| twisted_alexander_fastpath(&inst.pres, &w, &inst.rep, &cfg).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, paths);
criterion_main!(benches);
