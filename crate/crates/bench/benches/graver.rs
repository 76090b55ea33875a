use criterion::{black_box, criterion_group, criterion_main, Criterion};

use graver_bench::{bipartite_incidence, ones_row};
use graver_core::{
    build_certificate, check_certificate, graver_basis, graver_basis_oracle, graver_complexity, Limits,
    LowerBoundCertificate,
};

fn bench_graver(c: &mut Criterion) {
    let k33 = bipartite_incidence(3, 3);
    c.bench_function("graver_basis K_{3,3}", |b| {
        b.iter(|| graver_basis(black_box(&k33)).unwrap())
    });

    let twisted = graver_core::IntMatrix::from_rows(&[vec![1i64, 1, 1, 1], vec![0, 1, 2, 3]]).unwrap();
    c.bench_function("graver_basis_oracle twisted cubic, bound 3", |b| {
        b.iter(|| graver_basis_oracle(black_box(&twisted), 3).unwrap())
    });

    let ones = ones_row(3);
    c.bench_function("graver_complexity 1_3", |b| {
        b.iter(|| graver_complexity(black_box(&ones), &Limits::default()).unwrap())
    });
}

fn bench_certificates(c: &mut Criterion) {
    c.bench_function("build_certificate(6, 8)", |b| {
        b.iter(|| build_certificate(black_box(6), black_box(8)).unwrap())
    });

    let cert = LowerBoundCertificate::from_family(&build_certificate(6, 8).unwrap());
    c.bench_function("check_certificate(6, 8)", |b| {
        b.iter(|| check_certificate(black_box(&cert)))
    });

    let text = cert.to_json();
    c.bench_function("parse certificate (6, 8)", |b| {
        b.iter(|| LowerBoundCertificate::from_json(black_box(&text)).unwrap())
    });
}

criterion_group!(benches, bench_graver, bench_certificates);
criterion_main!(benches);
