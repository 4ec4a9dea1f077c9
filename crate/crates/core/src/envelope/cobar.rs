//! Reduced cobar complexes of the coalgebras `U` and `J`, truncated by total PBW order.

use std::collections::{BTreeMap, HashMap};

use crate::complex::{BasisLabel, CohomologyReport, FilteredComplex};
use crate::error::{Error, Result};
use crate::lierinehart::LieRinehartAlgebra;
use crate::polyring::poly::format_monomial;
use crate::polyring::{Monomial, Polynomial};
use crate::qlinalg::{QMatrix, Rational};

use super::uea::{generator_names, multi_binomial, multi_indices, order_of, sub_indices, MultiIndex, TruncatedEnveloping};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CobarSide {
    /// The enveloping algebra with its shuffle coproduct.
    Enveloping,
    /// Jets, whose coproduct is dual to the product of `U`.
    Jets,
}

/// Reduced coproduct on one basis element: `a -> sum c (b, b')` with `b, b'` of positive order.
type ReducedCoproduct = HashMap<MultiIndex, Vec<(MultiIndex, MultiIndex, Polynomial)>>;

fn enveloping_coproduct(r: usize, n: usize, base: &crate::polyring::QuotientRing) -> ReducedCoproduct {
    let mut out = ReducedCoproduct::new();
    for a in multi_indices(r, n) {
        let mut terms = Vec::new();
        for b in sub_indices(&a) {
            let rest: MultiIndex = a.iter().zip(&b).map(|(x, y)| x - y).collect();
            if order_of(&b) == 0 || order_of(&rest) == 0 {
                continue;
            }
            let c = base.constant(Rational::from_integer(multi_binomial(&a, &b).into()));
            terms.push((b, rest, c));
        }
        out.insert(a, terms);
    }
    out
}

/// `Delta(delta_a) = sum_{b, b'} [e^a](e^b e^b') delta_b (x) delta_b'`, keeping `|b| + |b'| <= N`.
fn jet_coproduct(u: &TruncatedEnveloping) -> Result<ReducedCoproduct> {
    let r = u.rank();
    let n = u.order();
    let mut out: ReducedCoproduct = multi_indices(r, n).into_iter().map(|a| (a, Vec::new())).collect();
    let positive: Vec<MultiIndex> = multi_indices(r, n).into_iter().filter(|a| order_of(a) > 0).collect();
    let one = u.algebra().base().one();
    for b in &positive {
        for c in &positive {
            if order_of(b) + order_of(c) > n {
                continue;
            }
            let prod = u.mul(&u.monomial(b, &one), &u.monomial(c, &one))?;
            for (a, f) in prod.terms() {
                out.get_mut(a).unwrap().push((b.clone(), c.clone(), f.clone()));
            }
        }
    }
    Ok(out)
}

/// Tuples of positive-order multi-indices with total order at most `n`.
fn tuples(positive: &[MultiIndex], len: usize, n: usize) -> Vec<Vec<MultiIndex>> {
    let mut out: Vec<Vec<MultiIndex>> = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for t in &out {
            let used: usize = t.iter().map(|a| order_of(a)).sum();
            for a in positive {
                if used + order_of(a) <= n {
                    let mut s = t.clone();
                    s.push(a.clone());
                    next.push(s);
                }
            }
        }
        out = next;
    }
    out
}

fn tuple_label(t: &[MultiIndex], side: CobarSide) -> String {
    let names = generator_names(t.first().map_or(0, |a| a.len()));
    let parts: Vec<String> = t
        .iter()
        .map(|a| {
            let m = format_monomial(&Monomial(a.clone()), &names);
            match side {
                CobarSide::Enveloping => m,
                CobarSide::Jets => format!("d({m})"),
            }
        })
        .collect();
    format!("[{}]", parts.join("|"))
}

/// Cohomology of the reduced cobar complex in degrees `0..tensor_degree_max`, truncated at total
/// order `n`. Degree `k` is flagged stable (faithful) when `k + 1 <= n`. The base ring must be
/// finite-dimensional over `Q`; jets additionally need a zero anchor.
pub fn cobar_truncated_cohomology(l: &LieRinehartAlgebra, side: CobarSide, n: usize, tensor_degree_max: usize) -> Result<CohomologyReport> {
    if n == 0 || tensor_degree_max == 0 || tensor_degree_max > 3 {
        return Err(Error::Precondition("need order >= 1 and tensor degree in 1..=3".into()));
    }
    let base = l.base();
    let ring_basis = base
        .finite_basis()
        .ok_or_else(|| Error::Unsupported("cobar cohomology needs a base ring finite-dimensional over Q".into()))?;
    if side == CobarSide::Jets && !l.has_zero_anchor() {
        return Err(Error::Unsupported("jet cobar complex is only implemented for zero anchor".into()));
    }
    let r = l.rank();
    let u = TruncatedEnveloping::new(l.clone(), n);
    let coproduct = match side {
        CobarSide::Enveloping => enveloping_coproduct(r, n, base),
        CobarSide::Jets => jet_coproduct(&u)?,
    };
    let positive: Vec<MultiIndex> = multi_indices(r, n).into_iter().filter(|a| order_of(a) > 0).collect();
    let ring_index: HashMap<Monomial, usize> = ring_basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let rb = ring_basis.len();

    let top = tensor_degree_max;
    let spaces: Vec<Vec<Vec<MultiIndex>>> = (0..=top).map(|k| tuples(&positive, k, n)).collect();
    let mut weights = Vec::new();
    let mut labels = Vec::new();
    for space in &spaces {
        let mut lab = Vec::new();
        for t in space {
            for m in &ring_basis {
                lab.push(BasisLabel::new(format_monomial(m, base.vars()), tuple_label(t, side)));
            }
        }
        weights.push(vec![0i64; lab.len()]);
        labels.push(lab);
    }

    let mut differentials = Vec::new();
    for k in 0..top {
        let index: HashMap<&Vec<MultiIndex>, usize> = spaces[k + 1].iter().enumerate().map(|(i, t)| (t, i)).collect();
        let mut entries = Vec::new();
        for (ci, t) in spaces[k].iter().enumerate() {
            let mut image: BTreeMap<Vec<MultiIndex>, Polynomial> = BTreeMap::new();
            for slot in 0..t.len() {
                let sign = if slot % 2 == 0 { -1 } else { 1 };
                for (b, c, f) in &coproduct[&t[slot]] {
                    let mut s = t[..slot].to_vec();
                    s.push(b.clone());
                    s.push(c.clone());
                    s.extend_from_slice(&t[slot + 1..]);
                    if !index.contains_key(&s) {
                        continue;
                    }
                    let g = image.remove(&s).unwrap_or_else(|| base.zero());
                    image.insert(s, &g + &f.scale(&crate::qlinalg::q(sign)));
                }
            }
            for (s, f) in image {
                let row = index[&s];
                for (bi, m) in ring_basis.iter().enumerate() {
                    let prod = base.nf(&(&f * &base.monomial(m)));
                    let coords = base
                        .coordinates(&prod, &ring_index)
                        .ok_or_else(|| Error::Inconsistent("coefficient outside the finite basis".into()))?;
                    for (mi, c) in coords {
                        entries.push((row * rb + mi, ci * rb + bi, c));
                    }
                }
            }
        }
        differentials.push(QMatrix::from_triplets(spaces[k + 1].len() * rb, spaces[k].len() * rb, entries));
    }
    let complex = FilteredComplex::new(weights, labels, differentials)?;

    let mut dims = Vec::new();
    let mut representatives = Vec::new();
    let mut stabilized = Vec::new();
    let mut warnings = Vec::new();
    for k in 0..top {
        let (dim, reps) = complex.cohomology(k, 0)?;
        dims.push(dim);
        representatives.push(reps.iter().map(|v| complex.render(k, v)).collect());
        let faithful = k < n;
        if !faithful {
            warnings.push(format!("degree {k} exceeds the faithful range for order {n}"));
        }
        stabilized.push(faithful);
    }
    Ok(CohomologyReport { dims, representatives, stabilized, evidence: Vec::new(), d_max: n as i64, window: 0, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::QuotientRing;

    #[test]
    fn abelian_cobar_is_exterior() {
        for r in 1..=2 {
            let l = LieRinehartAlgebra::abelian(QuotientRing::polynomial(&[]), r);
            for side in [CobarSide::Enveloping, CobarSide::Jets] {
                let rep = cobar_truncated_cohomology(&l, side, 3, 3).unwrap();
                let expect: Vec<usize> = (0..3).map(|k| crate::wedge::binomial(r, k)).collect();
                assert_eq!(rep.dims, expect, "rank {r} {side:?}");
                assert!(rep.stabilized.iter().all(|&s| s));
            }
        }
    }

    #[test]
    fn nonabelian_enveloping_cobar_ignores_the_bracket() {
        let l = LieRinehartAlgebra::lie_algebra(2, &[(0, 1, 1, 1)]).unwrap();
        let rep = cobar_truncated_cohomology(&l, CobarSide::Enveloping, 3, 3).unwrap();
        assert_eq!(rep.dims, vec![1, 2, 1]);
    }

    #[test]
    fn nonabelian_jets_match_ce() {
        // [e1, e2] = e2: H_CE = (1, 1, 0)
        let l = LieRinehartAlgebra::lie_algebra(2, &[(0, 1, 1, 1)]).unwrap();
        let rep = cobar_truncated_cohomology(&l, CobarSide::Jets, 3, 3).unwrap();
        assert_eq!(rep.dims, vec![1, 1, 0]);
    }

    #[test]
    fn unfaithful_degrees_are_flagged() {
        let l = LieRinehartAlgebra::abelian(QuotientRing::polynomial(&[]), 1);
        let rep = cobar_truncated_cohomology(&l, CobarSide::Enveloping, 1, 2).unwrap();
        assert_eq!(rep.stabilized, vec![true, false]);
        assert!(!rep.warnings.is_empty());
    }

    #[test]
    fn infinite_base_is_unsupported() {
        let ring = QuotientRing::polynomial(&["x"]);
        let l = LieRinehartAlgebra::abelian(ring, 1);
        assert!(matches!(cobar_truncated_cohomology(&l, CobarSide::Enveloping, 2, 2), Err(Error::Unsupported(_))));
    }
}
