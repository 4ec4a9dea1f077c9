use std::collections::BTreeMap;

use num_traits::Zero;
use proptest::prelude::*;

use rinehart_core::envelope::{JetAlgebra, MultiIndex, Tensor2, TruncatedEnveloping, TruncatedJet, UElement};
use rinehart_core::envelope::uea::{multi_indices, order_of};
use rinehart_core::lierinehart::{ce_differential, log_derivations};
use rinehart_core::polyring::poly_parse;
use rinehart_core::qlinalg::{kernel_basis, q, rank};
use rinehart_core::wedge::subsets;
use rinehart_core::{LRModule, LieRinehartAlgebra, MonomialOrder, Polynomial, QMatrix, QuotientRing};

const N: usize = 4;

fn plane() -> QuotientRing {
    QuotientRing::polynomial(&["x", "y"])
}

/// `{d/dx, x d/dx + d/dy}` on `Q[x,y]`, with `[e1, e2] = e1`.
fn affine() -> LieRinehartAlgebra {
    let r = plane();
    let p = |s: &str| r.parse_element(s).unwrap();
    LieRinehartAlgebra::from_derivations(r.clone(), &[vec![p("1"), p("0")], vec![p("x"), p("1")]]).unwrap()
}

/// A polynomial of degree at most 1 in `x, y` from three small coefficients.
fn linear(r: &QuotientRing, c: &[i64]) -> Polynomial {
    let terms = [r.one(), r.var(0), r.var(1)];
    terms.iter().zip(c).fold(r.zero(), |acc, (t, &k)| &acc + &t.scale(&q(k)))
}

fn element(u: &TruncatedEnveloping, max_order: usize, coeffs: &[i64]) -> UElement {
    let r = u.algebra().base().clone();
    let mut out = u.zero();
    for (a, c) in multi_indices(u.rank(), max_order).iter().zip(coeffs.chunks(3)) {
        out = u.add(&out, &u.monomial(a, &linear(&r, c)));
    }
    out
}

fn coeffs(len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-2i64..=2, len)
}

fn triple_left(u: &TruncatedEnveloping, t: &Tensor2) -> BTreeMap<(MultiIndex, MultiIndex, MultiIndex), Polynomial> {
    let mut out: BTreeMap<(MultiIndex, MultiIndex, MultiIndex), Polynomial> = BTreeMap::new();
    for ((a, b), f) in t {
        for ((c, d), g) in u.coproduct(&u.monomial(a, f)) {
            let e = out.entry((c, d, b.clone())).or_insert_with(|| u.algebra().base().zero());
            *e = &*e + &g;
        }
    }
    out.retain(|_, f| !f.is_zero());
    out
}

fn triple_right(u: &TruncatedEnveloping, t: &Tensor2) -> BTreeMap<(MultiIndex, MultiIndex, MultiIndex), Polynomial> {
    let mut out: BTreeMap<(MultiIndex, MultiIndex, MultiIndex), Polynomial> = BTreeMap::new();
    let one = u.algebra().base().one();
    for ((a, b), f) in t {
        for ((c, d), g) in u.coproduct(&u.monomial(b, &one)) {
            let h = &g * f;
            let e = out.entry((a.clone(), c, d)).or_insert_with(|| u.algebra().base().zero());
            *e = &*e + &h;
        }
    }
    out.retain(|_, f| !f.is_zero());
    out
}

fn jet(j: &JetAlgebra, c: &[i64]) -> TruncatedJet {
    let r = j.enveloping().algebra().base().clone();
    let values = multi_indices(j.enveloping().rank(), N).into_iter().zip(c.chunks(3)).map(|(a, c)| (a, linear(&r, c)));
    j.from_values(values)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn enveloping_product_is_associative(a in coeffs(9), b in coeffs(9), c in coeffs(18)) {
        let u = TruncatedEnveloping::new(affine(), N);
        let (x, y, z) = (element(&u, 1, &a), element(&u, 1, &b), element(&u, 2, &c));
        let left = u.mul(&u.mul(&x, &y).unwrap(), &z).unwrap();
        let right = u.mul(&x, &u.mul(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn words_have_monomial_top_symbol(word in prop::collection::vec(0usize..2, 0..=N)) {
        let u = TruncatedEnveloping::new(affine(), N);
        let p = u.word_product(&word).unwrap();
        let mut a = vec![0u32; 2];
        for &i in &word {
            a[i] += 1;
        }
        prop_assert_eq!(p.order(), word.len());
        for (b, f) in p.terms() {
            if order_of(b) == word.len() {
                prop_assert_eq!(b, &a);
                prop_assert_eq!(f, &u.algebra().base().one());
            }
        }
    }

    #[test]
    fn coproduct_is_coassociative_and_counital(c in coeffs(45)) {
        let u = TruncatedEnveloping::new(affine(), N);
        let x = element(&u, N, &c);
        let d = u.coproduct(&x);
        prop_assert_eq!(triple_left(&u, &d), triple_right(&u, &d));
        prop_assert_eq!(u.counit_left(&d), x.clone());
        prop_assert_eq!(u.counit_right(&d), x);
    }

    #[test]
    fn jet_product_is_a_commutative_unital_monoid(a in coeffs(45), b in coeffs(45), c in coeffs(45)) {
        let j = JetAlgebra::new(TruncatedEnveloping::new(affine(), N));
        let (f, g, h) = (jet(&j, &a), jet(&j, &b), jet(&j, &c));
        prop_assert_eq!(j.product(&f, &g), j.product(&g, &f));
        prop_assert_eq!(j.product(&j.product(&f, &g), &h), j.product(&f, &j.product(&g, &h)));
        prop_assert_eq!(j.product(&f, &j.unit()), f);
    }

    #[test]
    fn rank_of_transpose_and_kernel(rows in 1usize..7, cols in 1usize..7, seed in prop::collection::vec(-3i64..=3, 49)) {
        let dense: Vec<Vec<i64>> = (0..rows).map(|i| seed[i * 7..i * 7 + cols].to_vec()).collect();
        let m = QMatrix::from_dense_i64(&dense);
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
        let k = kernel_basis(&m);
        prop_assert_eq!(k.dim() + rank(&m), cols);
        for v in &k.basis {
            prop_assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn log_derivations_ignore_scaling(which in 0usize..4, c in prop::sample::select(vec![-3i64, -1, 2, 5])) {
        let vars = vec!["x".to_string(), "y".to_string()];
        let f = poly_parse(["x*y", "x*y*(x - y)", "x^2 - y^3", "y*(x^2 - y)"][which], &vars, MonomialOrder::Grevlex).unwrap();
        let a = log_derivations(&f, &vars).unwrap();
        let b = log_derivations(&f.scale(&q(c)), &vars).unwrap();
        prop_assert_eq!(a.basis, b.basis);
    }

    #[test]
    fn ce_differential_squares_to_zero(c1 in -3i64..=3, c2 in -3i64..=3, omega in coeffs(6)) {
        let r = plane();
        let p = |s: &str| r.parse_element(s).unwrap();
        let l = LieRinehartAlgebra::new(r.clone(), vec![vec![p("x"), p("0")], vec![p("0"), p("y")]], BTreeMap::new()).unwrap();
        let e = LRModule::new(&l, &[], vec![vec![vec![r.constant(q(c1))]], vec![vec![r.constant(q(c2))]]]).unwrap();
        let f = vec![vec![&linear(&r, &omega[..3]) * &linear(&r, &omega[3..])]];
        let df = ce_differential(&l, &e, 0, &f);
        prop_assert_eq!(df.len(), subsets(2, 1).len());
        let ddf = ce_differential(&l, &e, 1, &df);
        prop_assert!(ddf.iter().flatten().all(Polynomial::is_zero));
    }
}
