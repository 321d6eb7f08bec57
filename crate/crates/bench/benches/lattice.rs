use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use km_bench::relation_matrix;
use km_core::lattice::{rank_mod_p, smith_normal_form};
use km_core::Family;

fn snf(c: &mut Criterion) {
    let mut g = c.benchmark_group("smith_normal_form");
    g.sample_size(10);
    for (family, n) in [(Family::Gamma, 5), (Family::Gamma, 6), (Family::GammaHat, 6)] {
        let m = relation_matrix(family, n);
        g.bench_with_input(BenchmarkId::new(family.as_str(), n), &m, |b, m| b.iter(|| smith_normal_form(m)));
    }
    g.finish();
}

fn mod_p(c: &mut Criterion) {
    let m = relation_matrix(Family::Gamma, 7);
    let mut g = c.benchmark_group("rank_mod_p");
    g.sample_size(10);
    for p in [2u64, 3] {
        g.bench_with_input(BenchmarkId::new("gamma7", p), &p, |b, &p| b.iter(|| rank_mod_p(&m, p).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, snf, mod_p);
criterion_main!(benches);
