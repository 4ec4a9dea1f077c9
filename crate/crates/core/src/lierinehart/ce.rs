//! Chevalley-Eilenberg cochains `Hom_S(wedge^p L, E)` on the free basis, and their truncated cohomology.

use std::collections::HashMap;

use crate::complex::{filtered_cohomology, BasisLabel, CohomologyReport, FilteredComplex};
use crate::derham::TruncatedComplex;
use crate::error::{Error, Result};
use crate::polyring::poly::format_monomial;
use crate::polyring::{Monomial, Polynomial};
use crate::wedge::{omit, subsets, wedge_front};

use super::algebra::{connection_flatness, LRModule, LieRinehartAlgebra};

/// An `E`-valued alternating `p`-form: `values[J][k]` is component `k` of `omega(e_J)`,
/// with `J` running over the sorted `p`-subsets in lexicographic order.
pub type Cochain = Vec<Vec<Polynomial>>;

pub fn zero_cochain(l: &LieRinehartAlgebra, e: &LRModule, p: usize) -> Cochain {
    vec![vec![e.ring().zero(); e.rank()]; subsets(l.rank(), p).len()]
}

/// Position and sign of `e_i ^ e_K` among the sorted `p`-subsets.
fn evaluate_front(index: &HashMap<Vec<usize>, usize>, i: usize, k: &[usize]) -> Option<(i64, usize)> {
    wedge_front(i, k).map(|(sign, j)| (sign, index[&j]))
}

/// The two-term differential
/// `(d omega)(e_J) = sum_t (-1)^t nabla_{j_t} omega(e_{J - j_t})
///                  + sum_{s<t} (-1)^{s+t} omega([e_{j_s}, e_{j_t}] ^ e_{J - j_s - j_t})`.
pub fn ce_differential(l: &LieRinehartAlgebra, e: &LRModule, p: usize, omega: &Cochain) -> Cochain {
    let r = l.rank();
    let m = e.rank();
    let ring = e.ring();
    let source = subsets(r, p);
    assert_eq!(omega.len(), source.len(), "cochain of the wrong degree");
    let index: HashMap<Vec<usize>, usize> = source.iter().enumerate().map(|(i, j)| (j.clone(), i)).collect();
    let mut out = Vec::new();
    for j in subsets(r, p + 1) {
        let mut acc = vec![ring.zero(); m];
        for t in 0..j.len() {
            let rest = omit(&j, t);
            let v = e.act(l, j[t], &omega[index[&rest]]);
            for k in 0..m {
                acc[k] = if t % 2 == 0 { &acc[k] + &v[k] } else { &acc[k] - &v[k] };
            }
        }
        for s in 0..j.len() {
            for t in s + 1..j.len() {
                let c = l.bracket(j[s], j[t]);
                let rest = omit(&omit(&j, t), s);
                let sign = if (s + t) % 2 == 0 { 1 } else { -1 };
                for (a, ca) in c.iter().enumerate() {
                    if ca.is_zero() {
                        continue;
                    }
                    if let Some((w, idx)) = evaluate_front(&index, a, &rest) {
                        let f = ca.scale(&crate::qlinalg::q(sign * w));
                        for k in 0..m {
                            acc[k] = &acc[k] + &(&f * &omega[idx][k]);
                        }
                    }
                }
            }
        }
        out.push(acc.iter().map(|p| ring.nf(p)).collect());
    }
    out
}

/// Per-generator degree shift `s_i`: the dual generator gets weight `-s_i`, chosen so that the
/// differential never raises `coefficient degree + weight`.
pub fn generator_shifts(l: &LieRinehartAlgebra, e: &LRModule) -> Vec<i64> {
    let r = l.rank();
    let mut shifts: Vec<i64> = (0..r)
        .map(|i| {
            let from_anchor = l.anchor()[i].iter().filter_map(|p| e.ring().nf(p).total_degree()).map(|d| d as i64 - 1);
            let from_connection = e.connection()[i].iter().flatten().filter_map(|p| p.total_degree()).map(|d| d as i64);
            from_anchor.chain(from_connection).max().unwrap_or(0)
        })
        .collect();
    // deg c_ij^k + s_k <= s_i + s_j
    for _ in 0..4 * r + 4 {
        let mut changed = false;
        for ((i, j), c) in l.bracket_table() {
            for (k, ck) in c.iter().enumerate() {
                if let Some(d) = e.ring().nf(ck).total_degree() {
                    let deficit = d as i64 + shifts[k] - shifts[*i] - shifts[*j];
                    if deficit > 0 {
                        shifts[*i] += deficit;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    shifts
}

fn form_label(j: &[usize], k: usize, m: usize) -> String {
    let mut s = j.iter().map(|i| format!("eps{}", i + 1)).collect::<Vec<_>>().join("^");
    if m > 1 {
        if !s.is_empty() {
            s.push('*');
        }
        s.push_str(&format!("v{}", k + 1));
    }
    s
}

/// The Chevalley-Eilenberg complex cut at weight `d_max`, where a basis cochain
/// `m * eps_J * v_k` has weight `deg m - sum_{i in J} s_i`.
pub fn ce_truncated_complex(l: &LieRinehartAlgebra, e: &LRModule, d_max: i64) -> Result<TruncatedComplex> {
    let r = l.rank();
    let m = e.rank();
    let ring = e.ring();
    let shifts = generator_shifts(l, e);
    let mut bases: Vec<Vec<(usize, usize, Monomial)>> = Vec::new();
    let mut weights: Vec<Vec<i64>> = Vec::new();
    let mut labels: Vec<Vec<BasisLabel>> = Vec::new();
    for p in 0..=r {
        let (mut b, mut w, mut lab) = (Vec::new(), Vec::new(), Vec::new());
        for (ji, j) in subsets(r, p).iter().enumerate() {
            let shift: i64 = j.iter().map(|&i| shifts[i]).sum();
            let bound = d_max + shift;
            if bound < 0 {
                continue;
            }
            for k in 0..m {
                for mono in ring.standard_monomials(bound as u32) {
                    w.push(mono.degree() as i64 - shift);
                    lab.push(BasisLabel::new(format_monomial(&mono, ring.vars()), form_label(j, k, m)));
                    b.push((ji, k, mono));
                }
            }
        }
        bases.push(b);
        weights.push(w);
        labels.push(lab);
    }
    let mut differentials = Vec::new();
    for p in 0..r {
        let index: HashMap<(usize, usize, &Monomial), usize> =
            bases[p + 1].iter().enumerate().map(|(i, (j, k, mono))| ((*j, *k, mono), i)).collect();
        let mut entries = Vec::new();
        for (col, (ji, k, mono)) in bases[p].iter().enumerate() {
            let mut omega = zero_cochain(l, e, p);
            omega[*ji][*k] = ring.monomial(mono);
            let d = ce_differential(l, e, p, &omega);
            for (jo, comps) in d.iter().enumerate() {
                for (ko, poly) in comps.iter().enumerate() {
                    for (mo, c) in poly.terms() {
                        let row = *index.get(&(jo, ko, mo)).ok_or_else(|| {
                            Error::Filtration(format!("differential of basis cochain {col} in degree {p} leaves the truncation"))
                        })?;
                        entries.push((row, col, c.clone()));
                    }
                }
            }
        }
        differentials.push(crate::qlinalg::QMatrix::from_triplets(bases[p + 1].len(), bases[p].len(), entries));
    }
    Ok(TruncatedComplex { complex: FilteredComplex::new(weights, labels, differentials)?, d_max })
}

/// Degree-truncated Lie-Rinehart cohomology with coefficients in a flat module.
pub fn ce_cohomology(l: &LieRinehartAlgebra, e: &LRModule, d_max: i64, window: i64) -> Result<CohomologyReport> {
    let flat = connection_flatness(l, e);
    if !flat.ideal_preserved {
        return Err(Error::Precondition("anchor does not preserve the coefficient ideal".into()));
    }
    if !flat.flat {
        let (i, j, _) = flat.witness.unwrap();
        return Err(Error::Precondition(format!("connection is not flat on (e{}, e{})", i + 1, j + 1)));
    }
    let t = ce_truncated_complex(l, e, d_max)?;
    filtered_cohomology(&t.complex, d_max, window)
}
