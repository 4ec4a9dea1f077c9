use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, MonomialOrder};
use crate::qlinalg::Rational;

/// Sparse multivariate polynomial over Q.
///
/// Terms are kept sorted in strictly descending order under `order`, with no zero coefficients,
/// so equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    order: MonomialOrder,
    terms: Vec<(Monomial, Rational)>,
}

impl Polynomial {
    pub fn zero(nvars: usize, order: MonomialOrder) -> Self {
        Polynomial { nvars, order, terms: Vec::new() }
    }

    pub fn constant(nvars: usize, order: MonomialOrder, c: Rational) -> Self {
        Self::monomial(nvars, order, Monomial::one(nvars), c)
    }

    pub fn one(nvars: usize, order: MonomialOrder) -> Self {
        Self::constant(nvars, order, Rational::one())
    }

    pub fn var(nvars: usize, order: MonomialOrder, i: usize) -> Self {
        Self::monomial(nvars, order, Monomial::var(nvars, i), Rational::one())
    }

    pub fn monomial(nvars: usize, order: MonomialOrder, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.nvars(), nvars);
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial { nvars, order, terms }
    }

    /// Collects arbitrary terms, summing duplicates and dropping zeros.
    pub fn from_terms(nvars: usize, order: MonomialOrder, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars);
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Polynomial { nvars, order, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Rational)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one(self.nvars))
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms
            .binary_search_by(|(t, _)| self.order.cmp(m, t))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.first().map(|(_, c)| c)
    }

    /// Maximum total degree of a term; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Same polynomial, re-sorted under another order.
    pub fn with_order(&self, order: MonomialOrder) -> Self {
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Polynomial { nvars: self.nvars, order, terms }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars, self.order);
        }
        Polynomial {
            nvars: self.nvars,
            order: self.order,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            Some(c) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    /// `c * m * self`; multiplication by a monomial preserves the term order.
    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars, self.order);
        }
        Polynomial {
            nvars: self.nvars,
            order: self.order,
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        }
    }

    /// `self + factor * other` by merging the two sorted term lists.
    pub fn add_scaled(&self, factor: &Rational, other: &Polynomial) -> Self {
        self.check_compatible(other);
        if factor.is_zero() {
            return self.clone();
        }
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match self.order.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), factor * &b[j].1));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &a[i].1 + factor * &b[j].1;
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), factor * c)));
        Polynomial { nvars: self.nvars, order: self.order, terms: out }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars, self.order);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn diff(&self, i: usize) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| m.0[i] > 0).map(|(m, c)| {
            let mut e = m.0.clone();
            let k = e[i];
            e[i] -= 1;
            (Monomial(e), c * Rational::from_integer(k.into()))
        });
        // lowering one exponent can reorder terms under grevlex, so re-sort
        Self::from_terms(self.nvars, self.order, terms)
    }

    /// Applies the derivation `sum_j coeffs[j] * d/dx_j`.
    pub fn apply_derivation(&self, coeffs: &[Polynomial]) -> Self {
        assert_eq!(coeffs.len(), self.nvars);
        let mut out = Self::zero(self.nvars, self.order);
        for (j, a) in coeffs.iter().enumerate() {
            if !a.is_zero() {
                let d = self.diff(j);
                if !d.is_zero() {
                    out = &out + &(a * &d);
                }
            }
        }
        out
    }

    /// Substitutes rational values for all variables.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        self.terms.iter().fold(Rational::zero(), |acc, (m, c)| {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc + t
        })
    }

    fn check_compatible(&self, other: &Polynomial) {
        assert_eq!(self.nvars, other.nvars, "polynomials over different variable sets");
        assert_eq!(self.order, other.order, "polynomials under different monomial orders");
    }

    /// Canonical text form, e.g. `x^2*y - 3/2*x + 1`.
    pub fn display(&self, vars: &[impl AsRef<str>]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = format_monomial(m, vars);
            if mono.is_empty() {
                write!(s, "{abs}").unwrap();
            } else if abs.is_one() {
                s.push_str(&mono);
            } else {
                write!(s, "{abs}*{mono}").unwrap();
            }
        }
        s
    }
}

pub fn format_monomial(m: &Monomial, vars: &[impl AsRef<str>]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(vars[i].as_ref().to_string()),
            _ => parts.push(format!("{}^{e}", vars[i].as_ref())),
        }
    }
    parts.join("*")
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.add_scaled(&Rational::one(), rhs)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.add_scaled(&-Rational::one(), rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.check_compatible(rhs);
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero(self.nvars, self.order);
        }
        let terms = self
            .terms
            .iter()
            .flat_map(|(m, a)| rhs.terms.iter().map(move |(n, b)| (m.mul(n), a * b)));
        Polynomial::from_terms(self.nvars, self.order, terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::{q, qf};

    const O: MonomialOrder = MonomialOrder::Grevlex;

    fn x() -> Polynomial {
        Polynomial::var(2, O, 0)
    }
    fn y() -> Polynomial {
        Polynomial::var(2, O, 1)
    }

    #[test]
    fn derivative_of_hyperbola_equation() {
        let f = &(&x() * &y()) - &Polynomial::one(2, O);
        assert_eq!(f.diff(0), y());
        assert_eq!(f.diff(1), x());
        let x2y = &x().pow(2) * &y();
        assert_eq!(x2y.diff(1), x().pow(2));
    }

    #[test]
    fn multiplication_by_one() {
        let p = &x().pow(3) + &y().scale(&qf(3, 2));
        assert_eq!(&p * &Polynomial::one(2, O), p);
    }

    #[test]
    fn display_canonical() {
        let p = &(&x().pow(2) * &y()).scale(&q(2)) - &Polynomial::constant(2, O, qf(3, 2));
        assert_eq!(p.display(&["x", "y"]), "2*x^2*y - 3/2");
        assert_eq!((-&x()).display(&["x", "y"]), "-x");
        assert_eq!(Polynomial::zero(2, O).display(&["x", "y"]), "0");
    }

    #[test]
    fn derivation_application() {
        // (x d/dx - y d/dy)(x y) = 0
        let f = &x() * &y();
        assert!(f.apply_derivation(&[x(), -&y()]).is_zero());
        assert_eq!(f.apply_derivation(&[x(), Polynomial::zero(2, O)]), f);
    }
}
