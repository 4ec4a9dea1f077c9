//! Kähler differentials, exterior powers, and the truncated algebraic de Rham complex of a quotient ring.

use std::collections::HashMap;

use crate::complex::{filtered_cohomology, BasisLabel, CohomologyReport, FilteredComplex};
use crate::error::{Error, Result};
use crate::polyring::module::{module_groebner, ModuleGroebnerBasis, ModuleOrder, ModuleVector};
use crate::polyring::poly::format_monomial;
use crate::polyring::{Monomial, Polynomial, QuotientRing};
use crate::qlinalg::{QMatrix, Rational};
use crate::wedge::{subsets, wedge_front};

/// A finitely presented module over a quotient ring: a free cover modulo a relation submodule
/// of the cover over the ambient polynomial ring (ideal multiples of the cover included).
#[derive(Clone, Debug)]
pub struct PresentedModule {
    base: QuotientRing,
    generator_labels: Vec<String>,
    generator_weights: Vec<u32>,
    relation_rows: Vec<ModuleVector>,
    relations: ModuleGroebnerBasis,
}

impl PresentedModule {
    /// Builds the presentation; ideal rows `g * e_i` are added for every basis generator `g` of the base ideal.
    pub fn new(base: QuotientRing, generator_labels: Vec<String>, generator_weights: Vec<u32>, rows: Vec<ModuleVector>) -> Self {
        let rank = generator_labels.len();
        let n = base.nvars();
        let mut all = rows.clone();
        for g in base.gb().generators() {
            for i in 0..rank {
                all.push(ModuleVector::basis_multiple(rank, i, g));
            }
        }
        all.retain(|v| !v.is_zero());
        let order = ModuleOrder::Top { mono: base.order(), weights: generator_weights.clone() };
        let relations = module_groebner(&all, rank, n, order);
        PresentedModule { base, generator_labels, generator_weights, relation_rows: rows, relations }
    }

    pub fn base(&self) -> &QuotientRing {
        &self.base
    }

    pub fn rank(&self) -> usize {
        self.generator_labels.len()
    }

    pub fn generator_labels(&self) -> &[String] {
        &self.generator_labels
    }

    pub fn generator_weights(&self) -> &[u32] {
        &self.generator_weights
    }

    /// Relation rows as given, without the ideal multiples.
    pub fn relation_rows(&self) -> &[ModuleVector] {
        &self.relation_rows
    }

    pub fn relations(&self) -> &ModuleGroebnerBasis {
        &self.relations
    }

    pub fn normal_form(&self, v: &ModuleVector) -> ModuleVector {
        self.relations.normal_form(v)
    }

    pub fn is_zero_element(&self, v: &ModuleVector) -> bool {
        self.relations.contains(v)
    }

    /// Standard basis elements `m * g_pos` of weight at most `level`, where the weight is
    /// `deg m + weight(g_pos)`; a Q-basis of the corresponding filtration piece.
    pub fn truncated_basis(&self, level: i64) -> Vec<(usize, Monomial)> {
        let mut out = Vec::new();
        for pos in 0..self.rank() {
            let room = level - self.generator_weights[pos] as i64;
            if room < 0 {
                continue;
            }
            for m in Monomial::all_up_to_degree(self.base.nvars(), room as u32) {
                if self.relations.is_standard(pos, &m) {
                    out.push((pos, m));
                }
            }
        }
        out.sort_by(|a, b| self.relations.order.cmp(a, b));
        out
    }

    pub fn weight(&self, pos: usize, m: &Monomial) -> i64 {
        m.degree() as i64 + self.generator_weights[pos] as i64
    }

    pub fn display(&self, v: &ModuleVector) -> String {
        let vars = self.base.vars();
        let terms: Vec<(Rational, BasisLabel)> = {
            let mut t: Vec<((usize, Monomial), Rational)> = v.terms().map(|(k, c)| (k.clone(), c.clone())).collect();
            t.sort_by(|a, b| self.relations.order.cmp(&b.0, &a.0));
            t.into_iter()
                .map(|((p, m), c)| (c, BasisLabel::new(format_monomial(&m, vars), self.generator_labels[p].clone())))
                .collect()
        };
        crate::complex::render_combination(terms.iter().map(|(c, l)| (c, l)))
    }
}

/// `Omega^1_R`: cover `dx_1..dx_n`, relations `sum_i dg/dx_i dx_i` for the ideal generators.
pub fn kaehler_presentation(r: &QuotientRing) -> PresentedModule {
    let n = r.nvars();
    let labels: Vec<String> = r.vars().iter().map(|v| format!("d{v}")).collect();
    let rows: Vec<ModuleVector> = r
        .gb()
        .generators()
        .iter()
        .map(|g| ModuleVector::from_entries(&(0..n).map(|i| g.diff(i)).collect::<Vec<_>>()))
        .filter(|v| !v.is_zero())
        .collect();
    PresentedModule::new(r.clone(), labels, vec![1; n], rows)
}

/// `p`-th exterior power of a presented module: cover by `p`-wedges of the cover generators,
/// relations `rho ^ g_K` for every relation `rho` and `(p-1)`-wedge `g_K`.
pub fn exterior_power_presentation(m: &PresentedModule, p: usize) -> PresentedModule {
    let base = m.base().clone();
    let r = m.rank();
    if p == 0 {
        return PresentedModule::new(base, vec![String::new()], vec![0], Vec::new());
    }
    let wedges = subsets(r, p);
    let index: HashMap<Vec<usize>, usize> = wedges.iter().enumerate().map(|(i, j)| (j.clone(), i)).collect();
    let labels: Vec<String> = wedges
        .iter()
        .map(|j| j.iter().map(|&i| m.generator_labels()[i].as_str()).collect::<Vec<_>>().join("^"))
        .collect();
    let weights: Vec<u32> = wedges.iter().map(|j| j.iter().map(|&i| m.generator_weights()[i]).sum()).collect();
    let mut rows = Vec::new();
    for rho in m.relations().generators.iter() {
        for k in subsets(r, p - 1) {
            let mut row = ModuleVector::zero(wedges.len(), base.nvars());
            for ((i, mono), c) in rho.terms() {
                if let Some((sign, j)) = wedge_front(*i, &k) {
                    row.add_term((index[&j], mono.clone()), c * Rational::from_integer(sign.into()));
                }
            }
            if !row.is_zero() {
                rows.push(row);
            }
        }
    }
    PresentedModule::new(base, labels, weights, rows)
}

/// The algebraic de Rham complex `Omega^0 -> ... -> Omega^n` of a quotient ring.
#[derive(Clone, Debug)]
pub struct DeRhamComplex {
    ring: QuotientRing,
    forms: Vec<PresentedModule>,
    wedges: Vec<Vec<Vec<usize>>>,
    wedge_index: Vec<HashMap<Vec<usize>, usize>>,
}

impl DeRhamComplex {
    pub fn new(ring: &QuotientRing) -> Self {
        let n = ring.nvars();
        let omega1 = kaehler_presentation(ring);
        let forms: Vec<PresentedModule> = (0..=n).map(|p| if p == 1 { omega1.clone() } else { exterior_power_presentation(&omega1, p) }).collect();
        let wedges: Vec<Vec<Vec<usize>>> = (0..=n).map(|p| subsets(n, p)).collect();
        let wedge_index = wedges.iter().map(|w| w.iter().enumerate().map(|(i, j)| (j.clone(), i)).collect()).collect();
        DeRhamComplex { ring: ring.clone(), forms, wedges, wedge_index }
    }

    pub fn ring(&self) -> &QuotientRing {
        &self.ring
    }

    /// `Omega^p`, for `p` in `0..=n`.
    pub fn forms(&self, p: usize) -> &PresentedModule {
        &self.forms[p]
    }

    pub fn top_degree(&self) -> usize {
        self.ring.nvars()
    }

    /// Parses `coefficient * dx_J` pairs into a normal-form element of `Omega^p`.
    pub fn form(&self, p: usize, parts: &[(&str, &[usize])]) -> Result<FormElement> {
        let mut v = ModuleVector::zero(self.wedges[p].len(), self.ring.nvars());
        for (coeff, j) in parts {
            let c = self.ring.parse_element(coeff)?;
            let pos = *self.wedge_index[p].get(*j).ok_or_else(|| Error::Precondition(format!("not a sorted {p}-subset: {j:?}")))?;
            v = v.add(&ModuleVector::basis_multiple(v.rank(), pos, &c));
        }
        Ok(FormElement { degree: p, coords: self.forms[p].normal_form(&v) })
    }

    /// `d(a dx_J) = sum_i da/dx_i dx_i ^ dx_J`, evaluated on the given lift and normal-formed.
    pub fn differential(&self, omega: &FormElement) -> FormElement {
        let p = omega.degree;
        let n = self.ring.nvars();
        if p >= n {
            return FormElement { degree: p + 1, coords: ModuleVector::zero(0, n) };
        }
        let mut out = ModuleVector::zero(self.wedges[p + 1].len(), n);
        for ((pos, m), c) in omega.coords.terms() {
            let j = &self.wedges[p][*pos];
            for i in 0..n {
                if m.0[i] == 0 {
                    continue;
                }
                if let Some((sign, k)) = wedge_front(i, j) {
                    let mut dm = m.clone();
                    dm.0[i] -= 1;
                    let f = c * Rational::from_integer((sign * m.0[i] as i64).into());
                    out.add_term((self.wedge_index[p + 1][&k], dm), f);
                }
            }
        }
        FormElement { degree: p + 1, coords: self.forms[p + 1].normal_form(&out) }
    }

    pub fn display(&self, omega: &FormElement) -> String {
        if omega.degree > self.top_degree() {
            return "0".into();
        }
        self.forms[omega.degree].display(&omega.coords)
    }

    /// The complex of filtration pieces of weight at most `d_max`, weight = degree + form degree.
    pub fn truncated(&self, d_max: i64) -> Result<TruncatedComplex> {
        let n = self.ring.nvars();
        let bases: Vec<Vec<(usize, Monomial)>> = (0..=n).map(|p| self.forms[p].truncated_basis(d_max)).collect();
        let mut differentials = Vec::new();
        for p in 0..n {
            let index: HashMap<&(usize, Monomial), usize> = bases[p + 1].iter().enumerate().map(|(i, k)| (k, i)).collect();
            let mut entries = Vec::new();
            for (col, (pos, m)) in bases[p].iter().enumerate() {
                let omega = FormElement {
                    degree: p,
                    coords: ModuleVector::basis_multiple(self.wedges[p].len(), *pos, &self.ring.monomial(m)),
                };
                for (key, c) in self.differential(&omega).coords.terms() {
                    let row = *index.get(key).ok_or_else(|| {
                        Error::Filtration(format!("d of {} leaves the truncation", self.display(&omega)))
                    })?;
                    entries.push((row, col, c.clone()));
                }
            }
            differentials.push(QMatrix::from_triplets(bases[p + 1].len(), bases[p].len(), entries));
        }
        let weights = (0..=n).map(|p| bases[p].iter().map(|(pos, m)| self.forms[p].weight(*pos, m)).collect()).collect();
        let labels = (0..=n)
            .map(|p| {
                bases[p]
                    .iter()
                    .map(|(pos, m)| BasisLabel::new(format_monomial(m, self.ring.vars()), self.forms[p].generator_labels()[*pos].clone()))
                    .collect()
            })
            .collect();
        Ok(TruncatedComplex { complex: FilteredComplex::new(weights, labels, differentials)?, d_max })
    }
}

/// A differential form in normal form with respect to the relations of `Omega^degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormElement {
    pub degree: usize,
    pub coords: ModuleVector,
}

impl FormElement {
    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }
}

#[derive(Clone, Debug)]
pub struct TruncatedComplex {
    pub complex: FilteredComplex,
    pub d_max: i64,
}

pub fn truncated_de_rham_complex(r: &QuotientRing, d_max: i64) -> Result<TruncatedComplex> {
    if d_max < 1 {
        return Err(Error::Precondition("d_max must be at least 1".into()));
    }
    DeRhamComplex::new(r).truncated(d_max)
}

pub fn de_rham_cohomology(r: &QuotientRing, d_max: i64, window: i64) -> Result<CohomologyReport> {
    let t = truncated_de_rham_complex(r, d_max)?;
    filtered_cohomology(&t.complex, d_max, window)
}

/// Dimension of the weight-`<= level` piece of a presented module.
pub fn truncated_dim(m: &PresentedModule, level: i64) -> usize {
    m.truncated_basis(level).len()
}

/// Whether `v`, read as a vector over the cover, vanishes in the module.
pub fn vanishes(m: &PresentedModule, entries: &[Polynomial]) -> bool {
    m.is_zero_element(&ModuleVector::from_entries(entries))
}
