use num_traits::Zero;

use super::groebner::{buchberger, GroebnerBasis};
use super::monomial::{Monomial, MonomialOrder};
use super::parse::poly_parse;
use super::poly::Polynomial;
use crate::error::Result;
use crate::qlinalg::Rational;

/// `Q[vars] / ideal`, carried with the reduced Gröbner basis of the ideal.
/// Elements are represented by their normal forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientRing {
    vars: Vec<String>,
    ideal_gens: Vec<Polynomial>,
    gb: GroebnerBasis,
}

impl QuotientRing {
    pub fn new(vars: Vec<String>, ideal_gens: Vec<Polynomial>, order: MonomialOrder) -> Self {
        let n = vars.len();
        let ideal_gens: Vec<Polynomial> = ideal_gens.iter().map(|g| g.with_order(order)).filter(|g| !g.is_zero()).collect();
        let gb = if ideal_gens.is_empty() { GroebnerBasis::zero_ideal(n, order) } else { buchberger(&ideal_gens, n, order) };
        QuotientRing { vars, ideal_gens, gb }
    }

    /// Polynomial ring with no relations.
    pub fn polynomial(vars: &[&str]) -> Self {
        Self::new(vars.iter().map(|s| s.to_string()).collect(), Vec::new(), MonomialOrder::Grevlex)
    }

    /// Parses the ideal generators; grevlex order.
    pub fn parse(vars: &[&str], ideal: &[&str]) -> Result<Self> {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let gens = ideal
            .iter()
            .map(|s| poly_parse(s, &vars, MonomialOrder::Grevlex))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(vars, gens, MonomialOrder::Grevlex))
    }

    /// The same variables with additional relations.
    pub fn extend(&self, extra: &[Polynomial]) -> Self {
        let mut gens = self.ideal_gens.clone();
        gens.extend(extra.iter().cloned());
        Self::new(self.vars.clone(), gens, self.order())
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.gb.order()
    }

    pub fn ideal_gens(&self) -> &[Polynomial] {
        &self.ideal_gens
    }

    pub fn gb(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn parse_element(&self, text: &str) -> Result<Polynomial> {
        Ok(self.nf(&poly_parse(text, &self.vars, self.order())?))
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(self.nvars(), self.order())
    }

    pub fn one(&self) -> Polynomial {
        self.nf(&Polynomial::one(self.nvars(), self.order()))
    }

    pub fn constant(&self, c: Rational) -> Polynomial {
        self.nf(&Polynomial::constant(self.nvars(), self.order(), c))
    }

    pub fn var(&self, i: usize) -> Polynomial {
        self.nf(&Polynomial::var(self.nvars(), self.order(), i))
    }

    pub fn monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial::monomial(self.nvars(), self.order(), m.clone(), Rational::from_integer(1.into()))
    }

    pub fn nf(&self, p: &Polynomial) -> Polynomial {
        let p = if p.order() == self.order() { p.clone() } else { p.with_order(self.order()) };
        self.gb.normal_form(&p)
    }

    pub fn mul(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        self.nf(&(a * b))
    }

    pub fn is_member(&self, p: &Polynomial) -> bool {
        self.nf(p).is_zero()
    }

    /// Whether the ring is the zero ring.
    pub fn is_trivial(&self) -> bool {
        self.gb.is_unit()
    }

    /// Monomials of total degree at most `d` divisible by no leading monomial of the basis:
    /// a Q-basis of the degree-`<= d` filtration piece (degree-compatible order assumed).
    pub fn standard_monomials(&self, d: u32) -> Vec<Monomial> {
        let mut out: Vec<Monomial> = Monomial::all_up_to_degree(self.nvars(), d)
            .into_iter()
            .filter(|m| self.gb.is_standard(m))
            .collect();
        out.sort_by(|a, b| self.order().cmp(a, b));
        out
    }

    /// Whether the quotient is finite-dimensional over Q, with its monomial basis if so.
    pub fn finite_basis(&self) -> Option<Vec<Monomial>> {
        if self.is_trivial() {
            return Some(Vec::new());
        }
        // finite iff every variable has a pure power among the leading monomials
        let n = self.nvars();
        let mut bound = 0u32;
        for i in 0..n {
            let pure = self
                .gb
                .leading_monomials()
                .into_iter()
                .filter(|m| m.0.iter().enumerate().all(|(j, &e)| j == i || e == 0))
                .map(|m| m.0[i])
                .min()?;
            bound += pure;
        }
        Some(self.standard_monomials(bound))
    }

    /// Degree of an element: total degree of its normal form.
    pub fn degree(&self, p: &Polynomial) -> Option<u32> {
        self.nf(p).total_degree()
    }

    /// Coordinates of a normal form against an indexed monomial basis; `None` if a term is missing.
    pub fn coordinates(&self, p: &Polynomial, index: &std::collections::HashMap<Monomial, usize>) -> Option<Vec<(usize, Rational)>> {
        let mut out = Vec::new();
        for (m, c) in self.nf(p).terms() {
            if c.is_zero() {
                continue;
            }
            out.push((*index.get(m)?, c.clone()));
        }
        out.sort_by_key(|(i, _)| *i);
        Some(out)
    }

    pub fn display(&self, p: &Polynomial) -> String {
        p.display(&self.vars)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hyperbola_standard_monomials() {
        let r = QuotientRing::parse(&["x", "y"], &["x*y - 1"]).unwrap();
        let names: Vec<String> = r.standard_monomials(2).iter().map(|m| r.display(&r.monomial(m))).collect();
        assert_eq!(names, ["1", "y", "x", "y^2", "x^2"]);
        for d in 0..8 {
            assert_eq!(r.standard_monomials(d).len(), 2 * d as usize + 1);
        }
    }

    #[test]
    fn node_standard_monomials() {
        let r = QuotientRing::parse(&["x", "y"], &["x*y"]).unwrap();
        assert_eq!(r.standard_monomials(1).len(), 3);
        for d in 0..8 {
            assert_eq!(r.standard_monomials(d).len(), 2 * d as usize + 1);
        }
    }

    #[test]
    fn affine_line() {
        let r = QuotientRing::polynomial(&["x"]);
        assert_eq!(r.standard_monomials(0), vec![Monomial(vec![0])]);
        assert!(r.finite_basis().is_none());
    }

    #[test]
    fn artinian_basis() {
        let r = QuotientRing::parse(&["x"], &["x^3"]).unwrap();
        assert_eq!(r.finite_basis().unwrap().len(), 3);
        let q0 = QuotientRing::polynomial(&[]);
        assert_eq!(q0.finite_basis().unwrap().len(), 1);
    }

    #[test]
    fn hyperbola_inverse() {
        let r = QuotientRing::parse(&["x", "y"], &["x*y - 1"]).unwrap();
        assert_eq!(r.mul(&r.var(0), &r.var(1)), r.one());
    }
}
