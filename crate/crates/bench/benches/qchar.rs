use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use qchar_core::braid::Braid;
use qchar_core::cartan::{CartanData, TypeLabel};
use qchar_core::fm::{fm_fundamental, FmOptions};
use qchar_core::num_rational::BigRational;
use qchar_core::xseries::OracleTables;
use qchar_core::yring::YMonomial;

fn bench_fm(c: &mut Criterion) {
    let opts = FmOptions::default();
    let b2 = CartanData::new(TypeLabel::B, 2).unwrap();
    c.bench_function("fm_fundamental B2 node 1", |b| {
        b.iter(|| fm_fundamental(&b2, black_box(1), 0, &opts).unwrap())
    });
    let d4 = CartanData::new(TypeLabel::D, 4).unwrap();
    c.bench_function("fm_fundamental D4 node 2", |b| {
        b.iter(|| fm_fundamental(&d4, black_box(2), 0, &opts).unwrap())
    });
}

fn bench_braid_sweep(c: &mut Criterion) {
    let b3 = CartanData::new(TypeLabel::B, 3).unwrap();
    let all = b3.enumerate_weyl();
    let m = YMonomial::var(1, 0)
        .mul(&YMonomial::var(3, 2).pow(2))
        .mul(&YMonomial::var(2, -1).inverse());
    c.bench_function("t_w over all of W(B3)", |b| {
        b.iter(|| {
            let braid = Braid::new(&b3);
            for w in &all {
                black_box(braid.t_w(w, &m));
            }
        })
    });
    c.bench_function("t_w over all of W(B3), warm cache", |b| {
        let braid = Braid::new(&b3);
        b.iter(|| {
            for w in &all {
                black_box(braid.t_w(w, &m));
            }
        })
    });
}

fn bench_twisted_factorization(c: &mut Criterion) {
    let b2 = CartanData::new(TypeLabel::B, 2).unwrap();
    let braid = Braid::new(&b2);
    let qc = fm_fundamental(&b2, 1, 0, &FmOptions::default()).unwrap();
    let all = b2.enumerate_weyl();
    c.bench_function("factor_in_aw over W(B2) x char", |b| {
        b.iter(|| {
            for w in &all {
                let anchor = braid.t_w(w, qc.highest());
                for m in qc.poly().monomials() {
                    black_box(braid.factor_in_aw(m, &anchor, w).unwrap());
                }
            }
        })
    });
}

fn bench_oracle(c: &mut Criterion) {
    let a2 = CartanData::new(TypeLabel::A, 2).unwrap();
    let q = BigRational::from_integer(2.into());
    let m = YMonomial::var(1, 0).mul(&YMonomial::var(2, 3));
    c.bench_function("pairing oracle order 12 at q=2", |b| {
        let tables = OracleTables::new(&a2, &q, 12).unwrap();
        b.iter(|| black_box(tables.pairing(1, &m)))
    });
}

criterion_group!(
    benches,
    bench_fm,
    bench_braid_sweep,
    bench_twisted_factorization,
    bench_oracle
);
criterion_main!(benches);
