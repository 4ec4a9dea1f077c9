//! Antisymmetrization `wedge^p L -> U^{(x)p}`, its left inverse, and the symmetrization map
//! as a coalgebra morphism.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::lierinehart::LieRinehartAlgebra;
use crate::polyring::Polynomial;
use crate::qlinalg::{q, Rational};
use crate::wedge::{permutations, sort_with_sign, subsets};

use super::uea::{add_tensor_term, multi_binomial, multi_indices, order_of, sub_indices, tensor_of, MultiIndex, Tensor2, TruncatedEnveloping};

/// `f e^{a_1} (x) .. (x) e^{a_p}` keyed by the list of multi-indices.
pub type TensorP = BTreeMap<Vec<MultiIndex>, Polynomial>;

/// `e_J` keyed by sorted subsets.
pub type WedgeElement = BTreeMap<Vec<usize>, Polynomial>;

fn unit(r: usize, i: usize) -> MultiIndex {
    let mut a = vec![0; r];
    a[i] = 1;
    a
}

/// `Alt(f e_J) = f (1/p!) sum_sigma sgn(sigma) e_{j_sigma(1)} (x) .. (x) e_{j_sigma(p)}`.
pub fn alt_map(l: &LieRinehartAlgebra, w: &WedgeElement) -> TensorP {
    let r = l.rank();
    let base = l.base();
    let mut out = TensorP::new();
    for (j, f) in w {
        let p = j.len();
        let inv = Rational::new(1.into(), (1..=p as i64).product::<i64>().into());
        for (sign, perm) in permutations(p) {
            let key: Vec<MultiIndex> = perm.iter().map(|&s| unit(r, j[s])).collect();
            let c = f.scale(&(&inv * q(sign)));
            insert(base, &mut out, key, &c);
        }
    }
    out
}

/// Left inverse of [`alt_map`]: keeps tensors of order-one factors and wedges them.
pub fn proj_map(l: &LieRinehartAlgebra, t: &TensorP) -> WedgeElement {
    let base = l.base();
    let mut out = WedgeElement::new();
    for (factors, f) in t {
        if factors.iter().any(|a| order_of(a) != 1) {
            continue;
        }
        let letters: Vec<usize> = factors.iter().map(|a| a.iter().position(|&x| x == 1).unwrap()).collect();
        if let Some((sign, sorted)) = sort_with_sign(letters) {
            insert(base, &mut out, sorted, &f.scale(&q(sign)));
        }
    }
    out
}

fn insert<K: Ord>(base: &crate::polyring::QuotientRing, map: &mut BTreeMap<K, Polynomial>, key: K, f: &Polynomial) {
    let s = match map.get(&key) {
        Some(g) => base.nf(&(g + f)),
        None => base.nf(f),
    };
    if s.is_zero() {
        map.remove(&key);
    } else {
        map.insert(key, s);
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HkrReport {
    /// `P(Alt(e_J)) = e_J` for every `J`.
    pub projection_inverts_alt: bool,
    /// `Delta(theta(e^a)) = (theta (x) theta)(Delta_S(e^a))` up to the checked order.
    pub theta_coalgebra: bool,
    pub checked_order: usize,
    pub witness: Option<String>,
}

impl HkrReport {
    pub fn passed(&self) -> bool {
        self.projection_inverts_alt && self.theta_coalgebra
    }
}

fn theta_basis(u: &TruncatedEnveloping, a: &[u32]) -> Result<super::uea::UElement> {
    let mut s = BTreeMap::new();
    s.insert(a.to_vec(), u.algebra().base().one());
    u.symmetrize(&s)
}

/// Chain-level checks of the antisymmetrization and symmetrization maps, with `theta`
/// tested on symmetric monomials of order at most `max_order`.
pub fn hkr_check(l: &LieRinehartAlgebra, max_order: usize) -> Result<HkrReport> {
    let r = l.rank();
    let base = l.base();
    let mut witness = None;
    let mut projection_inverts_alt = true;
    for p in 0..=r {
        for j in subsets(r, p) {
            let mut w = WedgeElement::new();
            w.insert(j.clone(), base.one());
            if proj_map(l, &alt_map(l, &w)) != w {
                projection_inverts_alt = false;
                witness.get_or_insert_with(|| format!("P(Alt(e{j:?})) differs"));
            }
        }
    }
    let u = TruncatedEnveloping::new(l.clone(), max_order);
    let mut theta_coalgebra = true;
    for a in multi_indices(r, max_order) {
        let lhs = u.coproduct(&theta_basis(&u, &a)?);
        let mut rhs = Tensor2::new();
        for b in sub_indices(&a) {
            let rest: MultiIndex = a.iter().zip(&b).map(|(x, y)| x - y).collect();
            let c = Rational::from_integer(multi_binomial(&a, &b).into());
            for (key, f) in tensor_of(&u, &theta_basis(&u, &b)?, &theta_basis(&u, &rest)?) {
                add_tensor_term(&u, &mut rhs, key, &f.scale(&c));
            }
        }
        if lhs != rhs {
            theta_coalgebra = false;
            witness.get_or_insert_with(|| format!("theta fails to commute with the coproduct on e^{a:?}"));
        }
    }
    Ok(HkrReport { projection_inverts_alt, theta_coalgebra, checked_order: max_order, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::QuotientRing;

    #[test]
    fn alt_of_a_pair() {
        let l = LieRinehartAlgebra::abelian(QuotientRing::polynomial(&[]), 2);
        let mut w = WedgeElement::new();
        w.insert(vec![0, 1], l.base().one());
        let t = alt_map(&l, &w);
        assert_eq!(t.len(), 2);
        assert_eq!(t[&vec![vec![1, 0], vec![0, 1]]], l.base().constant(crate::qlinalg::qf(1, 2)));
        assert_eq!(t[&vec![vec![0, 1], vec![1, 0]]], l.base().constant(crate::qlinalg::qf(-1, 2)));
        assert_eq!(proj_map(&l, &t), w);
    }

    #[test]
    fn hkr_maps_on_examples() {
        let so3 = LieRinehartAlgebra::lie_algebra(3, &[(0, 1, 1, 2), (0, 2, -1, 1), (1, 2, 1, 0)]).unwrap();
        let ring = QuotientRing::polynomial(&["x", "y"]);
        let p = |s: &str| ring.parse_element(s).unwrap();
        let affine = LieRinehartAlgebra::from_derivations(ring.clone(), &[vec![p("1"), p("0")], vec![p("x"), p("1")]]).unwrap();
        for l in [so3, affine] {
            let rep = hkr_check(&l, 3).unwrap();
            assert!(rep.passed(), "{rep:?}");
        }
    }
}
