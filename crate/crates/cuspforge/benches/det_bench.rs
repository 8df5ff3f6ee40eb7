use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use cuspforge::engine::{build_m_delta, Variant};
use cuspforge::matrix::{bareiss_det, bareiss_det_seq};
use cuspforge::params::FieldParams;

fn bench_det(c: &mut Criterion) {
    let mut group = c.benchmark_group("bareiss_det");
    for r in [10usize, 14] {
        let params = FieldParams::new(3, 1, r).unwrap();
        let m = build_m_delta(&params, Variant::SmallHReduced).unwrap();
        group.bench_with_input(BenchmarkId::new("parallel", r), &m, |b, m| {
            b.iter(|| bareiss_det(&m.body).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("sequential", r), &m, |b, m| {
            b.iter(|| bareiss_det_seq(&m.body).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_det);
criterion_main!(benches);
