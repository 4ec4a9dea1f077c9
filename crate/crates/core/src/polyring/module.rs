//! Submodules of free modules over a polynomial ring: Gröbner bases, membership, syzygies.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use super::monomial::{Monomial, MonomialOrder};
use super::poly::Polynomial;
use crate::qlinalg::Rational;

/// Term order on `R^rank`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleOrder {
    /// Position over term: a lower position index is larger.
    Pot(MonomialOrder),
    /// Weighted degree first (`deg m + weights[pos]`), then the monomial order, then position.
    Top { mono: MonomialOrder, weights: Vec<u32> },
}

impl ModuleOrder {
    pub fn mono(&self) -> MonomialOrder {
        match self {
            ModuleOrder::Pot(m) => *m,
            ModuleOrder::Top { mono, .. } => *mono,
        }
    }

    /// Degree-compatible order with all position weights equal.
    pub fn top(mono: MonomialOrder) -> Self {
        ModuleOrder::Top { mono, weights: Vec::new() }
    }

    fn weight(&self, pos: usize) -> u32 {
        match self {
            ModuleOrder::Top { weights, .. } => weights.get(pos).copied().unwrap_or(0),
            ModuleOrder::Pot(_) => 0,
        }
    }

    pub fn cmp(&self, a: &(usize, Monomial), b: &(usize, Monomial)) -> Ordering {
        match self {
            ModuleOrder::Pot(mono) => b.0.cmp(&a.0).then_with(|| mono.cmp(&a.1, &b.1)),
            ModuleOrder::Top { mono, .. } => (a.1.degree() + self.weight(a.0))
                .cmp(&(b.1.degree() + self.weight(b.0)))
                .then_with(|| mono.cmp(&a.1, &b.1))
                .then_with(|| b.0.cmp(&a.0)),
        }
    }
}

/// Element of `R^rank`: sparse map `(position, monomial) -> coefficient`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleVector {
    rank: usize,
    nvars: usize,
    terms: BTreeMap<(usize, Monomial), Rational>,
}

impl ModuleVector {
    pub fn zero(rank: usize, nvars: usize) -> Self {
        ModuleVector { rank, nvars, terms: BTreeMap::new() }
    }

    pub fn from_entries(entries: &[Polynomial]) -> Self {
        let nvars = entries.first().map_or(0, Polynomial::nvars);
        let mut v = Self::zero(entries.len(), nvars);
        for (i, p) in entries.iter().enumerate() {
            for (m, c) in p.terms() {
                v.terms.insert((i, m.clone()), c.clone());
            }
        }
        v
    }

    /// `p * e_pos`.
    pub fn basis_multiple(rank: usize, pos: usize, p: &Polynomial) -> Self {
        let mut v = Self::zero(rank, p.nvars());
        for (m, c) in p.terms() {
            v.terms.insert((pos, m.clone()), c.clone());
        }
        v
    }

    pub fn unit(rank: usize, nvars: usize, pos: usize) -> Self {
        let mut v = Self::zero(rank, nvars);
        v.terms.insert((pos, Monomial::one(nvars)), Rational::one());
        v
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, Monomial), &Rational)> {
        self.terms.iter()
    }

    pub fn entry(&self, pos: usize, order: MonomialOrder) -> Polynomial {
        Polynomial::from_terms(
            self.nvars,
            order,
            self.terms.range((pos, Monomial::one(0))..).take_while(|((p, _), _)| *p == pos).map(|((_, m), c)| (m.clone(), c.clone())),
        )
    }

    pub fn entries(&self, order: MonomialOrder) -> Vec<Polynomial> {
        (0..self.rank).map(|i| self.entry(i, order)).collect()
    }

    pub fn leading_term(&self, order: &ModuleOrder) -> Option<(&(usize, Monomial), &Rational)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    pub fn add_term(&mut self, key: (usize, Monomial), c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key);
        match entry {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    /// `self + c * m * other`.
    pub fn add_scaled_term(&mut self, c: &Rational, m: &Monomial, other: &ModuleVector) {
        for ((p, t), a) in &other.terms {
            self.add_term((*p, t.mul(m)), c * a);
        }
    }

    pub fn add(&self, other: &ModuleVector) -> ModuleVector {
        let mut out = self.clone();
        out.add_scaled_term(&Rational::one(), &Monomial::one(self.nvars), other);
        out
    }

    pub fn scale(&self, c: &Rational) -> ModuleVector {
        let mut out = Self::zero(self.rank, self.nvars);
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(k, a)| (k.clone(), a * c)).collect();
        }
        out
    }

    pub fn mul_poly(&self, p: &Polynomial) -> ModuleVector {
        let mut out = Self::zero(self.rank, self.nvars);
        for (m, c) in p.terms() {
            out.add_scaled_term(c, m, self);
        }
        out
    }

    pub fn monic(&self, order: &ModuleOrder) -> ModuleVector {
        match self.leading_term(order) {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    /// Largest weighted degree of a term under the given position weights.
    pub fn weighted_degree(&self, weights: &[u32]) -> Option<u32> {
        self.terms.keys().map(|(p, m)| m.degree() + weights.get(*p).copied().unwrap_or(0)).max()
    }

    /// Keeps the listed positions, renumbered in order.
    pub fn project(&self, positions: &[usize]) -> ModuleVector {
        let mut out = Self::zero(positions.len(), self.nvars);
        for (new, &old) in positions.iter().enumerate() {
            for ((p, m), c) in self.terms.range((old, Monomial::one(0))..) {
                if *p != old {
                    break;
                }
                out.terms.insert((new, m.clone()), c.clone());
            }
        }
        out
    }
}

/// Full reduction of `v` by `gens`.
pub fn module_normal_form(v: &ModuleVector, gens: &[ModuleVector], order: &ModuleOrder) -> ModuleVector {
    module_divide(v, gens, order).1
}

/// Division in `R^rank`: `v = sum q_i g_i + r`, with no term of `r` divisible by a leading term.
pub fn module_divide(v: &ModuleVector, gens: &[ModuleVector], order: &ModuleOrder) -> (Vec<Polynomial>, ModuleVector) {
    let mono = order.mono();
    let leads: Vec<((usize, Monomial), Rational)> =
        gens.iter().map(|g| g.leading_term(order).map(|(k, c)| (k.clone(), c.clone())).expect("zero generator")).collect();
    let mut quotients: Vec<Polynomial> = gens.iter().map(|_| Polynomial::zero(v.nvars, mono)).collect();
    let mut rest = v.clone();
    let mut rem = ModuleVector::zero(v.rank, v.nvars);
    while let Some((key, c)) = rest.leading_term(order).map(|(k, c)| (k.clone(), c.clone())) {
        let hit = leads
            .iter()
            .enumerate()
            .find_map(|(i, ((p, lm), lc))| if *p == key.0 { lm.quotient_of(&key.1).map(|t| (i, t, &c / lc)) } else { None });
        match hit {
            Some((i, t, f)) => {
                quotients[i] = quotients[i].add_scaled(&f, &Polynomial::monomial(v.nvars, mono, t.clone(), Rational::one()));
                rest.add_scaled_term(&-f, &t, &gens[i]);
            }
            None => {
                rest.terms.remove(&key);
                rem.terms.insert(key, c);
            }
        }
    }
    (quotients, rem)
}

fn module_s_vector(f: &ModuleVector, g: &ModuleVector, order: &ModuleOrder) -> Option<ModuleVector> {
    let ((pf, mf), cf) = f.leading_term(order)?;
    let ((pg, mg), cg) = g.leading_term(order)?;
    if pf != pg {
        return None;
    }
    let l = mf.lcm(mg);
    let mut s = ModuleVector::zero(f.rank, f.nvars);
    s.add_scaled_term(&cf.recip(), &mf.quotient_of(&l).unwrap(), f);
    s.add_scaled_term(&-cg.recip(), &mg.quotient_of(&l).unwrap(), g);
    Some(s)
}

/// Reduced Gröbner basis of a submodule of `R^rank`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleGroebnerBasis {
    pub rank: usize,
    pub nvars: usize,
    pub order: ModuleOrder,
    pub generators: Vec<ModuleVector>,
}

impl ModuleGroebnerBasis {
    pub fn normal_form(&self, v: &ModuleVector) -> ModuleVector {
        module_normal_form(v, &self.generators, &self.order)
    }

    pub fn contains(&self, v: &ModuleVector) -> bool {
        self.normal_form(v).is_zero()
    }

    /// Whether `m * e_pos` is a standard monomial (not divisible by any leading term).
    pub fn is_standard(&self, pos: usize, m: &Monomial) -> bool {
        self.generators.iter().all(|g| {
            let ((p, lm), _) = g.leading_term(&self.order).unwrap();
            *p != pos || !lm.divides(m)
        })
    }

    pub fn verify_s_pairs(&self) -> bool {
        let g = &self.generators;
        (0..g.len()).all(|j| {
            (0..j).all(|i| module_s_vector(&g[i], &g[j], &self.order).is_none_or(|s| self.normal_form(&s).is_zero()))
        })
    }
}

/// Buchberger's algorithm for submodules, with the chain criterion.
pub fn module_groebner(gens: &[ModuleVector], rank: usize, nvars: usize, order: ModuleOrder) -> ModuleGroebnerBasis {
    let mut basis: Vec<ModuleVector> = Vec::new();
    for g in gens {
        assert_eq!(g.rank, rank, "module vector of wrong rank");
        let r = module_normal_form(g, &basis, &order);
        if !r.is_zero() {
            basis.push(r.monic(&order));
        }
    }
    let lead = |v: &ModuleVector| v.leading_term(&order).map(|(k, _)| k.clone()).unwrap();
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            if lead(&basis[i]).0 == lead(&basis[j]).0 {
                pairs.insert((i, j));
            }
        }
    }
    let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();
    let pair_lcm = |b: &[ModuleVector], (i, j): (usize, usize)| {
        let (a, c) = (lead(&b[i]), lead(&b[j]));
        (a.0, a.1.lcm(&c.1))
    };
    while let Some(&(i, j)) = pairs.iter().min_by(|a, b| order.cmp(&pair_lcm(&basis, **a), &pair_lcm(&basis, **b)).then(a.cmp(b))) {
        pairs.remove(&(i, j));
        done.insert((i, j));
        let (pos, l) = pair_lcm(&basis, (i, j));
        let chain = (0..basis.len()).any(|k| {
            let lk = lead(&basis[k]);
            k != i
                && k != j
                && lk.0 == pos
                && lk.1.divides(&l)
                && done.contains(&(i.min(k), i.max(k)))
                && done.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let s = module_s_vector(&basis[i], &basis[j], &order).unwrap();
        let r = module_normal_form(&s, &basis, &order);
        if !r.is_zero() {
            let new = basis.len();
            let r = r.monic(&order);
            let rp = lead(&r).0;
            basis.push(r);
            for k in 0..new {
                if lead(&basis[k]).0 == rp {
                    pairs.insert((k, new));
                }
            }
        }
    }
    // minimalize and interreduce
    basis.sort_by(|a, b| order.cmp(&lead(a), &lead(b)));
    let mut minimal: Vec<ModuleVector> = Vec::new();
    for g in basis {
        let (p, m) = lead(&g);
        if !minimal.iter().any(|h| {
            let (q, n) = lead(h);
            q == p && n.divides(&m)
        }) {
            minimal.push(g);
        }
    }
    let mut generators = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<ModuleVector> = minimal.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, g)| g.clone()).collect();
        let g = &minimal[k];
        let (key, c) = g.leading_term(&order).map(|(k, c)| (k.clone(), c.clone())).unwrap();
        let mut tail = g.clone();
        tail.terms.remove(&key);
        let mut red = module_normal_form(&tail, &others, &order);
        red.add_term(key, c);
        generators.push(red.monic(&order));
    }
    ModuleGroebnerBasis { rank, nvars, order, generators }
}

/// Generators of `{ (a_1..a_k) : sum a_i v_i in ideal }` over `Q[x]`, where `ideal` is given by
/// generators (empty for the polynomial ring itself).
///
/// Computed from a position-over-term Gröbner basis of the module generated by the rows
/// `v_i e_0 + e_i` and `g e_0`: the basis elements with vanishing `e_0` component generate the syzygies.
pub fn syzygy_basis(v: &[Polynomial], ideal: &[Polynomial]) -> Vec<ModuleVector> {
    assert!(!v.is_empty(), "syzygies of an empty sequence");
    let (k, nvars, mono) = (v.len(), v[0].nvars(), v[0].order());
    let rank = k + 1;
    let mut gens = Vec::new();
    for (i, vi) in v.iter().enumerate() {
        let mut row = ModuleVector::basis_multiple(rank, 0, vi);
        row.add_term((i + 1, Monomial::one(nvars)), Rational::one());
        gens.push(row);
    }
    for g in ideal {
        gens.push(ModuleVector::basis_multiple(rank, 0, g));
    }
    let order = ModuleOrder::Pot(mono);
    let gb = module_groebner(&gens, rank, nvars, order);
    let positions: Vec<usize> = (1..rank).collect();
    let syz: Vec<ModuleVector> = gb
        .generators
        .iter()
        .filter(|g| g.leading_term(&gb.order).unwrap().0 .0 != 0)
        .map(|g| g.project(&positions))
        .collect();
    if syz.is_empty() {
        return syz;
    }
    minimal_generators(&syz, k, nvars, ModuleOrder::Pot(mono))
}

/// Drops generators that lie in the submodule generated by the others (largest first),
/// then returns the survivors in ascending leading-term order, each monic.
pub fn minimal_generators(gens: &[ModuleVector], rank: usize, nvars: usize, order: ModuleOrder) -> Vec<ModuleVector> {
    let mut kept: Vec<ModuleVector> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.monic(&order)).collect();
    kept.sort_by(|a, b| order.cmp(a.leading_term(&order).unwrap().0, b.leading_term(&order).unwrap().0));
    kept.dedup();
    let mut i = kept.len();
    while i > 0 {
        i -= 1;
        let others: Vec<ModuleVector> = kept.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
        if others.is_empty() {
            break;
        }
        if module_groebner(&others, rank, nvars, order.clone()).contains(&kept[i]) {
            kept.remove(i);
        }
    }
    kept
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse::poly_parse;

    const O: MonomialOrder = MonomialOrder::Grevlex;

    fn p(s: &str) -> Polynomial {
        poly_parse(s, &["x".to_string(), "y".to_string()], O).unwrap()
    }

    fn mv(entries: &[&str]) -> ModuleVector {
        ModuleVector::from_entries(&entries.iter().map(|s| p(s)).collect::<Vec<_>>())
    }

    fn check_syzygies(v: &[Polynomial], syz: &[ModuleVector]) {
        for s in syz {
            let e = s.entries(O);
            let total = e.iter().zip(v).fold(Polynomial::zero(2, O), |acc, (a, b)| &acc + &(a * b));
            assert!(total.is_zero());
        }
    }

    #[test]
    fn reduced_single_relation() {
        let gb = module_groebner(&[mv(&["y", "x"])], 2, 2, ModuleOrder::Pot(O));
        assert_eq!(gb.generators, vec![mv(&["y", "x"])]);
        assert!(gb.verify_s_pairs());
    }

    #[test]
    fn full_submodule_reduces_everything() {
        let gb = module_groebner(&[mv(&["1", "0"]), mv(&["0", "1"])], 2, 2, ModuleOrder::Pot(O));
        assert!(gb.contains(&mv(&["x^2*y + 3", "y - 7"])));
    }

    #[test]
    fn jacobian_row_in_kaehler_relations() {
        // relations of Omega^1 of Q[x,y]/(xy-1): (y, x) and ideal multiples
        let gens = [mv(&["y", "x"]), mv(&["x*y - 1", "0"]), mv(&["0", "x*y - 1"])];
        let gb = module_groebner(&gens, 2, 2, ModuleOrder::top(O));
        assert!(gb.verify_s_pairs());
        assert!(gb.contains(&mv(&["y", "x"])));
        assert!(!gb.contains(&mv(&["1", "0"])));
    }

    #[test]
    fn syzygies_of_gradient_of_hyperbola() {
        let v = [p("y"), p("x")];
        let syz = syzygy_basis(&v, &[]);
        assert_eq!(syz, vec![mv(&["x", "-y"])]);
    }

    #[test]
    fn syzygies_of_unit() {
        let syz = syzygy_basis(&[p("1")], &[]);
        assert!(syz.is_empty());
    }

    #[test]
    fn syzygies_of_x_y_one() {
        let v = [p("x"), p("y"), p("1")];
        let syz = syzygy_basis(&v, &[]);
        check_syzygies(&v, &syz);
        assert_eq!(syz.len(), 2);
        let gb = module_groebner(&syz, 3, 2, ModuleOrder::Pot(O));
        assert!(gb.contains(&mv(&["1", "0", "-x"])));
        assert!(gb.contains(&mv(&["0", "1", "-y"])));
        let expected = module_groebner(&[mv(&["1", "0", "-x"]), mv(&["0", "1", "-y"])], 3, 2, ModuleOrder::Pot(O));
        for s in &syz {
            assert!(expected.contains(s));
        }
    }

    #[test]
    fn syzygies_modulo_an_ideal() {
        // a*x in (x*y): generated by y and x*y... i.e. by (y)
        let syz = syzygy_basis(&[p("x")], &[p("x*y")]);
        assert_eq!(syz, vec![mv(&["y"])]);
    }
}
