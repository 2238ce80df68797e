use std::hint::black_box;

use criterion::Criterion;
use nthilbert::classic_dht::{dht_forward, DhtWindowSpec};
use nthilbert::exactlin::{determinant, determinant_bareiss, rational_inverse};
use nthilbert::modmath::{mod_inverse, PowerOfTwoModulus};
use nthilbert::ntdht::{build_nt_matrix, NtMatrixSpec};
use nthilbert::pipeline::{search_mod_inverse, NtTransform, ReductionMode, DEFAULT_SEED};
use nthilbert::Signal;

pub fn benchmarks(c: &mut Criterion) {
    let spec = NtMatrixSpec::paper16();
    let a = build_nt_matrix(&spec);

    c.bench_function("mod_inverse/all_odd_mod_4096", |b| {
        let m = PowerOfTwoModulus::from_exponent(12).unwrap();
        b.iter(|| {
            (1..4096i64)
                .step_by(2)
                .map(|x| mod_inverse(black_box(x), m).unwrap().value())
                .sum::<u64>()
        })
    });

    c.bench_function("build_nt_matrix/16", |b| {
        b.iter(|| build_nt_matrix(black_box(&spec)))
    });

    c.bench_function("determinant/gauss_16", |b| {
        b.iter(|| determinant(black_box(&a)))
    });
    c.bench_function("determinant/bareiss_16", |b| {
        b.iter(|| determinant_bareiss(black_box(&a)))
    });
    c.bench_function("rational_inverse/16", |b| {
        b.iter(|| rational_inverse(black_box(&a)))
    });

    let t = NtTransform::new(spec).with_inverse().unwrap();
    let x: Vec<i64> = (0..16).map(|i| (i * 7) % 16).collect();
    c.bench_function("roundtrip/plain_16", |b| {
        b.iter(|| t.roundtrip(black_box(&x), ReductionMode::Plain).unwrap())
    });

    let f = Signal::from_integers(0, (0..64).map(|i| i % 5)).unwrap();
    let w = DhtWindowSpec::new(64).unwrap();
    c.bench_function("dht_forward/64", |b| {
        b.iter(|| dht_forward(black_box(&f), -64..=64, w).unwrap())
    });

    let mut group = c.benchmark_group("search");
    group.sample_size(10);
    group.bench_function("paper16", |b| {
        b.iter(|| search_mod_inverse(black_box(&[spec]), DEFAULT_SEED))
    });
    group.finish();
}
