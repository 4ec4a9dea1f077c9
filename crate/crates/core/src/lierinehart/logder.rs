//! Logarithmic derivations of a principal divisor and Saito's freeness criterion.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyring::module::{minimal_generators, module_groebner, syzygy_basis, ModuleOrder, ModuleVector};
use crate::polyring::{MonomialOrder, Polynomial, QuotientRing};
use crate::wedge::subsets;

use super::algebra::{determinant, display_derivation, LieRinehartAlgebra};

/// A certified free basis of `T(-log f)` with the Lie-Rinehart structure it generates.
#[derive(Clone, Debug)]
pub struct LogDerivations {
    pub algebra: LieRinehartAlgebra,
    /// `basis[k][j]`: coefficient of `d/dx_j` in the `k`-th derivation.
    pub basis: Vec<Vec<Polynomial>>,
    /// Determinant of the coefficient matrix; a nonzero rational multiple of `f`.
    pub saito_determinant: Polynomial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogDerivationSummary {
    pub rank: usize,
    pub basis: Vec<String>,
    pub saito: bool,
    pub determinant: String,
}

impl LogDerivations {
    pub fn summary(&self) -> LogDerivationSummary {
        let ring = self.algebra.base();
        LogDerivationSummary {
            rank: self.basis.len(),
            basis: self.basis.iter().map(|d| display_derivation(ring.vars(), d)).collect(),
            saito: true,
            determinant: ring.display(&self.saito_determinant),
        }
    }
}

fn to_vector(d: &[Polynomial]) -> ModuleVector {
    ModuleVector::from_entries(d)
}

fn check_divisor(f: &Polynomial) -> Result<()> {
    if f.is_zero() || f.is_constant() {
        return Err(Error::Precondition("the divisor equation must be a nonconstant polynomial".into()));
    }
    Ok(())
}

/// Generators of `{ D : D(f) in <f> }` as coefficient vectors, read off the syzygies of
/// `(df/dx_1, .., df/dx_n, f)`; minimal under the degree-compatible module order, monic,
/// sorted by descending leading term.
pub fn log_derivation_generators(f: &Polynomial) -> Result<Vec<Vec<Polynomial>>> {
    check_divisor(f)?;
    let n = f.nvars();
    let f = f.with_order(MonomialOrder::Grevlex);
    let mut v: Vec<Polynomial> = (0..n).map(|i| f.diff(i)).collect();
    v.push(f.clone());
    let positions: Vec<usize> = (0..n).collect();
    let derivations: Vec<ModuleVector> =
        syzygy_basis(&v, &[]).iter().map(|s| s.project(&positions)).filter(|d| !d.is_zero()).collect();
    Ok(canonical(&derivations, n))
}

/// Generators of the derivations annihilating `f` (`<D, grad f> = 0`), canonicalized like
/// [`log_derivation_generators`].
pub fn annihilating_derivations(f: &Polynomial) -> Result<Vec<Vec<Polynomial>>> {
    check_divisor(f)?;
    let n = f.nvars();
    let f = f.with_order(MonomialOrder::Grevlex);
    let grad: Vec<Polynomial> = (0..n).map(|i| f.diff(i)).collect();
    if grad.iter().all(Polynomial::is_zero) {
        return Err(Error::Precondition("gradient vanishes identically".into()));
    }
    Ok(canonical(&syzygy_basis(&grad, &[]), n))
}

fn canonical(gens: &[ModuleVector], n: usize) -> Vec<Vec<Polynomial>> {
    if gens.is_empty() {
        return Vec::new();
    }
    let order = ModuleOrder::top(MonomialOrder::Grevlex);
    let mut min = minimal_generators(gens, n, n, order.clone());
    min.reverse();
    min.iter().map(|v| v.entries(MonomialOrder::Grevlex)).collect()
}

/// Saito's criterion: `n` derivations in `n` variables whose coefficient determinant is a
/// nonzero rational multiple of `f`.
pub fn saito_check(gens: &[Vec<Polynomial>], f: &Polynomial) -> Result<bool> {
    let n = f.nvars();
    if gens.len() != n || gens.iter().any(|g| g.len() != n) {
        return Err(Error::Precondition(format!("Saito's criterion needs exactly {n} derivations in {n} variables")));
    }
    let det = determinant(gens).with_order(f.order());
    Ok(!det.is_zero() && det.monic() == f.monic())
}

/// `T(-log f)` as a free Lie-Rinehart algebra over `Q[vars]`, certified by Saito's criterion.
///
/// The minimal generators are tried first; failing that, every `n`-subset of the minimal
/// generators and the reduced Gröbner basis of the module.
pub fn log_derivations(f: &Polynomial, vars: &[String]) -> Result<LogDerivations> {
    let n = f.nvars();
    if vars.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: vars.len() });
    }
    let f = f.with_order(MonomialOrder::Grevlex);
    let gens = log_derivation_generators(&f)?;
    let mut candidates = gens.clone();
    if gens.len() != n || !saito_check(&gens, &f)? {
        let order = ModuleOrder::top(MonomialOrder::Grevlex);
        let vectors: Vec<ModuleVector> = gens.iter().map(|d| to_vector(d)).collect();
        let gb = module_groebner(&vectors, n, n, order.clone());
        for g in gb.generators.iter().rev() {
            let e = g.entries(MonomialOrder::Grevlex);
            if !candidates.contains(&e) {
                candidates.push(e);
            }
        }
    }
    let chosen = if gens.len() == n && saito_check(&gens, &f)? {
        Some(gens.clone())
    } else if candidates.len() >= n {
        subsets(candidates.len(), n)
            .into_iter()
            .map(|idx| idx.iter().map(|&i| candidates[i].clone()).collect::<Vec<_>>())
            .find(|sub| saito_check(sub, &f).unwrap_or(false))
    } else {
        None
    };
    let Some(basis) = chosen else {
        return Err(Error::NotCertifiedFree { generators: gens.iter().map(|d| display_derivation(vars, d)).collect() });
    };
    let ring = QuotientRing::new(vars.to_vec(), Vec::new(), MonomialOrder::Grevlex);
    let saito_determinant = determinant(&basis);
    let algebra = LieRinehartAlgebra::from_derivations(ring, &basis)?;
    Ok(LogDerivations { algebra, basis, saito_determinant })
}
