//! Buchberger's algorithm for polynomial ideals over Q.

use std::collections::BTreeSet;

use num_traits::One;

use super::monomial::{Monomial, MonomialOrder};
use super::poly::Polynomial;
use crate::qlinalg::Rational;

/// Reduced Gröbner basis: monic generators sorted by ascending leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    nvars: usize,
    order: MonomialOrder,
    generators: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn leading_monomials(&self) -> Vec<&Monomial> {
        self.generators.iter().filter_map(Polynomial::leading_monomial).collect()
    }

    /// Whether the basis is the unit ideal.
    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(|g| g.leading_monomial().is_some_and(Monomial::is_one))
    }

    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        normal_form(p, &self.generators)
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        self.normal_form(p).is_zero()
    }

    /// Whether `m` is divisible by no leading monomial.
    pub fn is_standard(&self, m: &Monomial) -> bool {
        self.generators.iter().all(|g| !g.leading_monomial().unwrap().divides(m))
    }
}

/// Full multivariate division remainder of `p` by `gens` (every term reduced).
pub fn normal_form(p: &Polynomial, gens: &[Polynomial]) -> Polynomial {
    divide(p, gens).1
}

/// Multivariate division: `p = sum q_i g_i + r` with no term of `r` divisible by any `LT(g_i)`.
pub fn divide(p: &Polynomial, gens: &[Polynomial]) -> (Vec<Polynomial>, Polynomial) {
    let (n, ord) = (p.nvars(), p.order());
    let mut quotients: Vec<Polynomial> = gens.iter().map(|_| Polynomial::zero(n, ord)).collect();
    let mut remainder = Vec::new();
    let mut rest = p.clone();
    while let Some((m, c)) = rest.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
        let divisor = gens.iter().enumerate().find_map(|(i, g)| {
            let (gm, gc) = g.leading_term()?;
            gm.quotient_of(&m).map(|t| (i, t, &c / gc))
        });
        match divisor {
            Some((i, t, f)) => {
                quotients[i] = quotients[i].add_scaled(&f, &Polynomial::monomial(n, ord, t.clone(), Rational::one()));
                rest = rest.add_scaled(&-f.clone(), &gens[i].mul_term(&t, &Rational::one()));
            }
            None => {
                remainder.push((m.clone(), c.clone()));
                rest = rest.add_scaled(&-c, &Polynomial::monomial(n, ord, m, Rational::one()));
            }
        }
    }
    (quotients, Polynomial::from_terms(n, ord, remainder))
}

pub fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (fm, fc) = f.leading_term().expect("S-polynomial of zero");
    let (gm, gc) = g.leading_term().expect("S-polynomial of zero");
    let l = fm.lcm(gm);
    let a = fm.quotient_of(&l).unwrap();
    let b = gm.quotient_of(&l).unwrap();
    &f.mul_term(&a, &fc.recip()) - &g.mul_term(&b, &gc.recip())
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
///
/// Pairs are selected by the normal strategy (smallest lcm first); the coprime-leading-term
/// criterion and the chain criterion discard pairs without reduction.
pub fn buchberger(gens: &[Polynomial], nvars: usize, order: MonomialOrder) -> GroebnerBasis {
    let mut basis: Vec<Polynomial> = Vec::new();
    for g in gens {
        let g = g.with_order(order);
        assert_eq!(g.nvars(), nvars, "generator over a different variable set");
        let r = normal_form(&g, &basis);
        if !r.is_zero() {
            basis.push(r.monic());
        }
    }
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.insert((i, j));
        }
    }
    let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();
    while !pairs.is_empty() {
        let &(i, j) = pairs
            .iter()
            .min_by(|a, b| {
                let la = lcm_of(&basis, a.0, a.1);
                let lb = lcm_of(&basis, b.0, b.1);
                order.cmp(&la, &lb).then(a.cmp(b))
            })
            .unwrap();
        pairs.remove(&(i, j));
        done.insert((i, j));
        let (lm_i, lm_j) = (basis[i].leading_monomial().unwrap(), basis[j].leading_monomial().unwrap());
        if lm_i.coprime(lm_j) {
            continue;
        }
        let l = lm_i.lcm(lm_j);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].leading_monomial().unwrap().divides(&l)
                && done.contains(&ordered(i, k))
                && done.contains(&ordered(j, k))
        });
        if chain {
            continue;
        }
        let r = normal_form(&s_polynomial(&basis[i], &basis[j]), &basis);
        if !r.is_zero() {
            let new = basis.len();
            basis.push(r.monic());
            for k in 0..new {
                pairs.insert((k, new));
            }
        }
    }
    GroebnerBasis { nvars, order, generators: reduce_basis(basis, order) }
}

fn ordered(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

fn lcm_of(basis: &[Polynomial], i: usize, j: usize) -> Monomial {
    basis[i].leading_monomial().unwrap().lcm(basis[j].leading_monomial().unwrap())
}

/// Minimalizes and interreduces a Gröbner basis.
fn reduce_basis(mut basis: Vec<Polynomial>, order: MonomialOrder) -> Vec<Polynomial> {
    basis.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    let mut minimal: Vec<Polynomial> = Vec::new();
    for g in basis {
        let lm = g.leading_monomial().unwrap();
        if !minimal.iter().any(|h| h.leading_monomial().unwrap().divides(lm)) {
            minimal.push(g);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<Polynomial> = minimal.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, g)| g.clone()).collect();
        let g = &minimal[k];
        let (lm, lc) = g.leading_term().unwrap();
        let head = Polynomial::monomial(g.nvars(), order, lm.clone(), lc.clone());
        let tail = normal_form(&(g - &head), &others);
        out.push((&head + &tail).monic());
    }
    out
}

impl GroebnerBasis {
    /// Zero ideal in `nvars` variables.
    pub fn zero_ideal(nvars: usize, order: MonomialOrder) -> Self {
        GroebnerBasis { nvars, order, generators: Vec::new() }
    }

    /// Re-checks the Gröbner property: every S-polynomial reduces to zero.
    pub fn verify_s_pairs(&self) -> bool {
        let g = &self.generators;
        (0..g.len()).all(|j| (0..j).all(|i| normal_form(&s_polynomial(&g[i], &g[j]), g).is_zero()))
    }

    /// Checks the reducedness invariant.
    pub fn verify_reduced(&self) -> bool {
        self.generators.iter().enumerate().all(|(k, g)| {
            g.leading_coeff().is_some_and(|c| *c == Rational::one())
                && g.terms().iter().all(|(m, _)| {
                    self.generators.iter().enumerate().all(|(i, h)| i == k || !h.leading_monomial().unwrap().divides(m))
                })
        })
    }
}

/// Sum of `q_i g_i`, used to check division identities.
pub fn combine(quotients: &[Polynomial], gens: &[Polynomial]) -> Option<Polynomial> {
    let first = gens.first()?;
    let mut acc = Polynomial::zero(first.nvars(), first.order());
    for (q, g) in quotients.iter().zip(gens) {
        acc = &acc + &(q * g);
    }
    Some(acc)
}
