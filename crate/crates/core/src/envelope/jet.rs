//! Jets: `S`-linear functionals on `U`, stored by their values on the PBW basis up to order `N`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::polyring::{Polynomial, QuotientRing};
use crate::qlinalg::Rational;

use super::uea::{multi_binomial, multi_factorial, multi_indices, order_of, sub_indices, MultiIndex, TruncatedEnveloping, UElement, WordToken};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedJet {
    order: usize,
    values: BTreeMap<MultiIndex, Polynomial>,
}

impl TruncatedJet {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn values(&self) -> &BTreeMap<MultiIndex, Polynomial> {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }
}

/// Jets over a truncated enveloping algebra.
#[derive(Clone, Debug)]
pub struct JetAlgebra {
    u: TruncatedEnveloping,
}

impl JetAlgebra {
    pub fn new(u: TruncatedEnveloping) -> Self {
        JetAlgebra { u }
    }

    pub fn enveloping(&self) -> &TruncatedEnveloping {
        &self.u
    }

    fn base(&self) -> &QuotientRing {
        self.u.algebra().base()
    }

    /// Jet with the given values on PBW monomials; missing values are zero, orders above `N` are dropped.
    pub fn from_values(&self, values: impl IntoIterator<Item = (MultiIndex, Polynomial)>) -> TruncatedJet {
        let mut out = BTreeMap::new();
        for (a, f) in values {
            let f = self.base().nf(&f);
            if order_of(&a) <= self.u.order() && !f.is_zero() {
                out.insert(a, f);
            }
        }
        TruncatedJet { order: self.u.order(), values: out }
    }

    /// The counit `1 -> 1`, `e^a -> 0`: the unit of the jet algebra.
    pub fn unit(&self) -> TruncatedJet {
        self.from_values([(vec![0; self.u.rank()], self.base().one())])
    }

    /// `delta_b`: 1 on `e^b`, 0 on the other PBW monomials.
    pub fn delta(&self, b: &[u32]) -> TruncatedJet {
        self.from_values([(b.to_vec(), self.base().one())])
    }

    pub fn value(&self, phi: &TruncatedJet, a: &[u32]) -> Polynomial {
        phi.values.get(a).cloned().unwrap_or_else(|| self.base().zero())
    }

    /// `phi(u)`, extended left `S`-linearly.
    pub fn evaluate(&self, phi: &TruncatedJet, u: &UElement) -> Polynomial {
        let mut acc = self.base().zero();
        for (a, f) in u.terms() {
            acc = &acc + &(f * &self.value(phi, a));
        }
        self.base().nf(&acc)
    }

    pub fn add(&self, phi: &TruncatedJet, psi: &TruncatedJet) -> TruncatedJet {
        let order = phi.order.min(psi.order);
        let mut values = phi.values.clone();
        for (a, f) in &psi.values {
            let g = values.remove(a).unwrap_or_else(|| self.base().zero());
            values.insert(a.clone(), &g + f);
        }
        let mut out = self.from_values(values);
        out.order = order;
        out.values.retain(|a, _| order_of(a) <= order);
        out
    }

    pub fn scale(&self, phi: &TruncatedJet, c: &Polynomial) -> TruncatedJet {
        let mut out = self.from_values(phi.values.iter().map(|(a, f)| (a.clone(), f * c)));
        out.order = phi.order;
        out
    }

    /// Convolution dual to the coproduct: `(phi psi)(e^a) = sum_b binom(a, b) phi(e^b) psi(e^{a-b})`.
    pub fn product(&self, phi: &TruncatedJet, psi: &TruncatedJet) -> TruncatedJet {
        let order = phi.order.min(psi.order);
        let mut values = Vec::new();
        for a in multi_indices(self.u.rank(), order) {
            let mut acc = self.base().zero();
            for b in sub_indices(&a) {
                let rest: MultiIndex = a.iter().zip(&b).map(|(x, y)| x - y).collect();
                let c = Rational::from_integer(multi_binomial(&a, &b).into());
                acc = &acc + &(&self.value(phi, &b) * &self.value(psi, &rest)).scale(&c);
            }
            values.push((a, acc));
        }
        let mut out = self.from_values(values);
        out.order = order;
        out
    }

    /// The algebra map from polynomials in `w_1..w_r` sending `w_i` to `delta_{e_i}`, so
    /// `w^b -> b! delta_b`.
    pub fn from_symbols(&self, p: &Polynomial) -> Result<TruncatedJet> {
        if p.nvars() != self.u.rank() {
            return Err(Error::DimensionMismatch { expected: self.u.rank(), found: p.nvars() });
        }
        let values = p.terms().iter().map(|(m, c)| {
            let f = Rational::from_integer(multi_factorial(&m.0).into()) * c;
            (m.0.clone(), self.base().constant(f))
        });
        Ok(self.from_values(values))
    }

    /// `(nabla_i phi)(u) = a(e_i)(phi(u)) - phi(e_i u)`, a jet of order `N - 1`.
    pub fn grothendieck_connection(&self, phi: &TruncatedJet, i: usize) -> Result<TruncatedJet> {
        if phi.order == 0 {
            return Err(Error::OrderOverflow { needed: 1, limit: 0 });
        }
        let order = phi.order - 1;
        let l = self.u.algebra();
        let mut values = Vec::new();
        for a in multi_indices(self.u.rank(), order) {
            let mut word = vec![WordToken::Gen(i)];
            for (k, &e) in a.iter().enumerate() {
                word.extend(std::iter::repeat_n(WordToken::Gen(k), e as usize));
            }
            let shifted = self.evaluate(phi, &self.u.normal_form(&word)?);
            let moved = l.derive(i, &self.value(phi, &a));
            values.push((a, &moved - &shifted));
        }
        let mut out = self.from_values(values);
        out.order = order;
        Ok(out)
    }

    /// `nabla_i nabla_j - nabla_j nabla_i - sum_k c_ij^k nabla_k` on `phi`, for every pair;
    /// returns the first pair where it fails.
    pub fn connection_flatness(&self, phi: &TruncatedJet) -> Result<Option<(usize, usize)>> {
        let r = self.u.rank();
        let l = self.u.algebra();
        for i in 0..r {
            for j in i + 1..r {
                let ij = self.grothendieck_connection(&self.grothendieck_connection(phi, j)?, i)?;
                let ji = self.grothendieck_connection(&self.grothendieck_connection(phi, i)?, j)?;
                let mut curvature = self.add(&ij, &self.scale(&ji, &self.base().constant(-Rational::from_integer(1.into()))));
                for (k, c) in l.bracket(i, j).iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let nk = self.grothendieck_connection(phi, k)?;
                    curvature = self.add(&curvature, &self.scale(&nk, &-c));
                }
                if !curvature.is_zero() {
                    return Ok(Some((i, j)));
                }
            }
        }
        Ok(None)
    }
}
