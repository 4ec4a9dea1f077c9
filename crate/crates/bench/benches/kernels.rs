use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use rinehart_core::derham::de_rham_cohomology;
use rinehart_core::envelope::TruncatedEnveloping;
use rinehart_core::polyring::buchberger;
use rinehart_core::qlinalg::{rank, QMatrix};
use rinehart_core::{LieRinehartAlgebra, MonomialOrder, QuotientRing};

fn groebner(c: &mut Criterion) {
    let ring = QuotientRing::polynomial(&["x", "y", "z"]);
    let gens: Vec<_> = ["x^2 + y*z - 1", "x*y - z^2", "y^3 - x*z + 2"].iter().map(|s| ring.parse_element(s).unwrap()).collect();
    c.bench_function("buchberger_three_cubics", |b| b.iter(|| buchberger(black_box(&gens), 3, MonomialOrder::Grevlex)));
}

fn linear_algebra(c: &mut Criterion) {
    let n = 40;
    let rows: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| ((i * 7 + j * 13) % 11) as i64 - 5).collect()).collect();
    let m = QMatrix::from_dense_i64(&rows);
    c.bench_function("rank_40x40", |b| b.iter(|| rank(black_box(&m))));
}

fn de_rham(c: &mut Criterion) {
    let hyperbola = QuotientRing::parse(&["x", "y"], &["x*y - 1"]).unwrap();
    let mut group = c.benchmark_group("de_rham");
    group.sample_size(10);
    group.bench_function("hyperbola_d6", |b| b.iter(|| de_rham_cohomology(black_box(&hyperbola), 6, 3).unwrap()));
    group.finish();
}

fn pbw(c: &mut Criterion) {
    let so3 = LieRinehartAlgebra::lie_algebra(3, &[(0, 1, 1, 2), (0, 2, -1, 1), (1, 2, 1, 0)]).unwrap();
    let u = TruncatedEnveloping::new(so3, 6);
    c.bench_function("pbw_normal_form_so3_word6", |b| b.iter(|| u.word_product(black_box(&[2, 1, 0, 2, 1, 0])).unwrap()));
}

criterion_group!(benches, groebner, linear_algebra, de_rham, pbw);
criterion_main!(benches);
