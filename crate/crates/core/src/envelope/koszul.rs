//! The Koszul resolution `U (x)_S wedge^p L -> S`, truncated by PBW order, and its comparison
//! with Chevalley-Eilenberg cochains.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lierinehart::{ce_differential, Cochain, LRModule, LieRinehartAlgebra};
use crate::polyring::module::{module_groebner, ModuleOrder, ModuleVector};
use crate::polyring::Polynomial;
use crate::qlinalg::{q, rank, QMatrix};
use crate::wedge::{omit, subsets, wedge_front};

use super::uea::{multi_indices, order_of, MultiIndex, TruncatedEnveloping, UElement};

/// `(a, J) -> f` means `f e^a (x) e_J` with `J` sorted.
pub type KElement = BTreeMap<(MultiIndex, Vec<usize>), Polynomial>;

fn add_k(u: &TruncatedEnveloping, out: &mut KElement, key: (MultiIndex, Vec<usize>), f: &Polynomial) {
    if f.is_zero() {
        return;
    }
    let base = u.algebra().base();
    let s = match out.get(&key) {
        Some(g) => base.nf(&(g + f)),
        None => base.nf(f),
    };
    if s.is_zero() {
        out.remove(&key);
    } else {
        out.insert(key, s);
    }
}

fn add_u_times(u: &TruncatedEnveloping, out: &mut KElement, x: &UElement, j: &[usize], sign: i64) {
    for (a, f) in x.terms() {
        add_k(u, out, (a.clone(), j.to_vec()), &f.scale(&q(sign)));
    }
}

/// `1 (x) e_J`.
pub fn koszul_generator(u: &TruncatedEnveloping, j: &[usize]) -> KElement {
    let mut out = KElement::new();
    add_k(u, &mut out, (vec![0; u.rank()], j.to_vec()), &u.algebra().base().one());
    out
}

/// `d(u (x) e_J) = sum_t (-1)^t u e_{j_t} (x) e_{J - j_t}
///               + sum_{s<t} (-1)^{s+t} sum_k u c_{j_s j_t}^k (x) e_k ^ e_{J - j_s - j_t}`.
pub fn koszul_differential(u: &TruncatedEnveloping, x: &KElement) -> Result<KElement> {
    let l = u.algebra();
    let mut out = KElement::new();
    for ((a, j), f) in x {
        let head = u.monomial(a, f);
        if j.is_empty() {
            continue;
        }
        if order_of(a) + 1 > u.order() {
            return Err(Error::OrderOverflow { needed: order_of(a) + 1, limit: u.order() });
        }
        for t in 0..j.len() {
            let prod = u.gen_right(&head, j[t]);
            add_u_times(u, &mut out, &prod, &omit(j, t), if t % 2 == 0 { 1 } else { -1 });
        }
        for s in 0..j.len() {
            for t in s + 1..j.len() {
                let rest = omit(&omit(j, t), s);
                let sign = if (s + t) % 2 == 0 { 1 } else { -1 };
                for (k, c) in l.bracket(j[s], j[t]).iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    if let Some((w, kj)) = wedge_front(k, &rest) {
                        add_u_times(u, &mut out, &u.ring_right(&head, c), &kj, sign * w);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Basis `e^a (x) e_J` of degree `p` within PBW order `n - p`.
fn koszul_basis(r: usize, n: usize, p: usize) -> Vec<(MultiIndex, Vec<usize>)> {
    if p > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    for j in subsets(r, p) {
        for a in multi_indices(r, n - p) {
            out.push((a, j.clone()));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KoszulReport {
    pub rank: usize,
    pub order: usize,
    pub d_squared_zero: bool,
    pub augmentation_zero: bool,
    /// Every positive-order PBW monomial lies in the image of `d_1`, so `H_0 = S`.
    pub h0_is_ring: bool,
    /// `H_0 .. H_r` over `Q`, only when `S` is finite-dimensional.
    pub homology_dims: Option<Vec<usize>>,
    /// Exactness is only meaningful once `N >= r`.
    pub faithful: bool,
    pub witness: Option<String>,
}

impl KoszulReport {
    pub fn passed(&self) -> bool {
        self.d_squared_zero && self.augmentation_zero && self.h0_is_ring
    }
}

/// Checks `d^2 = 0`, `eps d_1 = 0` and `H_0 = S` on the resolution cut at PBW order `n`.
pub fn koszul_checks(l: &LieRinehartAlgebra, n: usize) -> Result<KoszulReport> {
    let r = l.rank();
    let u = TruncatedEnveloping::new(l.clone(), n);
    let base = l.base();
    let mut witness = None;

    let mut d_squared_zero = true;
    for p in 2..=r.min(n) {
        for (a, j) in koszul_basis(r, n, p) {
            let mut x = KElement::new();
            add_k(&u, &mut x, (a.clone(), j.clone()), &base.one());
            let dd = koszul_differential(&u, &koszul_differential(&u, &x)?)?;
            if !dd.is_empty() && d_squared_zero {
                d_squared_zero = false;
                witness = Some(format!("d^2 of {} (x) e{:?} is nonzero", u.display(&u.monomial(&a, &base.one())), j));
            }
        }
    }

    let ambient = multi_indices(r, n);
    let pos: HashMap<&MultiIndex, usize> = ambient.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let zero = vec![0; r];
    let mut augmentation_zero = true;
    let mut image = Vec::new();
    for (a, j) in koszul_basis(r, n, 1) {
        let mut x = KElement::new();
        add_k(&u, &mut x, (a, j), &base.one());
        let d = koszul_differential(&u, &x)?;
        let mut entries = vec![base.zero(); ambient.len()];
        for ((b, _), f) in &d {
            if *b == zero {
                augmentation_zero = false;
            }
            entries[pos[b]] = f.clone();
        }
        image.push(ModuleVector::from_entries(&entries));
    }
    let nvars = base.nvars();
    for g in base.gb().generators() {
        for i in 0..ambient.len() {
            image.push(ModuleVector::basis_multiple(ambient.len(), i, g));
        }
    }
    if !augmentation_zero && witness.is_none() {
        witness = Some("eps(d_1) has a nonzero term".into());
    }
    let gb = module_groebner(&image, ambient.len(), nvars, ModuleOrder::Pot(base.order()));
    let mut h0_is_ring = true;
    for (i, a) in ambient.iter().enumerate() {
        if order_of(a) >= 1 && !gb.contains(&ModuleVector::unit(ambient.len(), nvars, i)) {
            h0_is_ring = false;
            if witness.is_none() {
                witness = Some(format!("{} is not in the image of d_1", u.display(&u.monomial(a, &base.one()))));
            }
        }
    }

    let homology_dims = match base.finite_basis() {
        Some(basis) => Some(truncated_homology(&u, &basis)?),
        None => None,
    };
    Ok(KoszulReport { rank: r, order: n, d_squared_zero, augmentation_zero, h0_is_ring, homology_dims, faithful: n >= r, witness })
}

fn truncated_homology(u: &TruncatedEnveloping, ring_basis: &[crate::polyring::Monomial]) -> Result<Vec<usize>> {
    let r = u.rank();
    let n = u.order();
    let base = u.algebra().base();
    let ring_index: HashMap<_, _> = ring_basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let bases: Vec<Vec<(MultiIndex, Vec<usize>)>> = (0..=r).map(|p| koszul_basis(r, n, p)).collect();
    let dim = |p: usize| bases[p].len() * ring_basis.len();
    // matrices d_p : K_p -> K_{p-1}
    let mut ranks = vec![0usize; r + 2];
    for p in 1..=r {
        let index: HashMap<&(MultiIndex, Vec<usize>), usize> = bases[p - 1].iter().enumerate().map(|(i, k)| (k, i)).collect();
        let mut entries = Vec::new();
        for (ci, (a, j)) in bases[p].iter().enumerate() {
            for (bi, m) in ring_basis.iter().enumerate() {
                let mut x = KElement::new();
                add_k(u, &mut x, (a.clone(), j.clone()), &base.monomial(m));
                for (key, f) in koszul_differential(u, &x)? {
                    let row = index[&key];
                    let coords = base
                        .coordinates(&f, &ring_index)
                        .ok_or_else(|| Error::Inconsistent("coefficient outside the finite basis".into()))?;
                    for (mi, c) in coords {
                        entries.push((row * ring_basis.len() + mi, ci * ring_basis.len() + bi, c));
                    }
                }
            }
        }
        ranks[p] = rank(&QMatrix::from_triplets(dim(p - 1), dim(p), entries));
    }
    Ok((0..=r).map(|p| dim(p) - ranks[p] - ranks[p + 1]).collect())
}

/// `eps d iota` on the associated graded algebra, as a matrix over `S` with rows indexed by
/// `(p-1)`-subsets and columns by `p`-subsets.
pub fn reduced_koszul_differential(l: &LieRinehartAlgebra, p: usize) -> Result<Vec<Vec<Polynomial>>> {
    let gr = l.associated_graded();
    let r = gr.rank();
    if p == 0 || p > r {
        return Err(Error::Precondition(format!("Koszul degree must lie in 1..={r}")));
    }
    let u = TruncatedEnveloping::new(gr, 1);
    let rows = subsets(r, p - 1);
    let cols = subsets(r, p);
    let mut m = vec![vec![l.base().zero(); cols.len()]; rows.len()];
    let zero = vec![0; r];
    for (ci, j) in cols.iter().enumerate() {
        for ((a, k), f) in koszul_differential(&u, &koszul_generator(&u, j))? {
            if a == zero {
                let ri = rows.iter().position(|x| *x == k).unwrap();
                m[ri][ci] = f;
            }
        }
    }
    Ok(m)
}

/// Evaluates a cochain on a Koszul chain through the module action: `omega(u (x) e_K) = u . omega(e_K)`.
pub fn evaluate_cochain(u: &TruncatedEnveloping, e: &LRModule, p: usize, omega: &Cochain, x: &KElement) -> Vec<Polynomial> {
    let ring = e.ring();
    let index: HashMap<Vec<usize>, usize> = subsets(u.rank(), p).into_iter().enumerate().map(|(i, j)| (j, i)).collect();
    let mut acc = vec![ring.zero(); e.rank()];
    for ((a, k), f) in x {
        let v = u.act(&u.monomial(a, f), e, &omega[index[k]]);
        for i in 0..acc.len() {
            acc[i] = ring.nf(&(&acc[i] + &v[i]));
        }
    }
    acc
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomComparison {
    pub checked: usize,
    pub passed: bool,
    pub witness: Option<String>,
}

/// Compares `omega -> omega o d` on `Hom_U(U (x) wedge^p L, E)` with the Chevalley-Eilenberg
/// differential, on every basis cochain with coefficients of degree at most `max_degree`.
pub fn hom_complex_compare(l: &LieRinehartAlgebra, e: &LRModule, p: usize, max_degree: u32) -> Result<HomComparison> {
    let r = l.rank();
    if p >= r {
        return Err(Error::Precondition(format!("cochain degree must be below the rank {r}")));
    }
    let u = TruncatedEnveloping::new(l.clone(), 1);
    let ring = e.ring();
    let targets = subsets(r, p + 1);
    let chains: Vec<KElement> = targets.iter().map(|j| koszul_differential(&u, &koszul_generator(&u, j))).collect::<Result<_>>()?;
    let mut checked = 0;
    for ji in 0..subsets(r, p).len() {
        for k in 0..e.rank() {
            for mono in ring.standard_monomials(max_degree) {
                let mut omega = vec![vec![ring.zero(); e.rank()]; subsets(r, p).len()];
                omega[ji][k] = ring.monomial(&mono);
                let expect = ce_differential(l, e, p, &omega);
                for (t, chain) in chains.iter().enumerate() {
                    checked += 1;
                    let got = evaluate_cochain(&u, e, p, &omega, chain);
                    if got != expect[t] {
                        return Ok(HomComparison {
                            checked,
                            passed: false,
                            witness: Some(format!("cochain {ji}/{k}/{mono:?} differs on e{:?}", targets[t])),
                        });
                    }
                }
            }
        }
    }
    Ok(HomComparison { checked, passed: true, witness: None })
}
