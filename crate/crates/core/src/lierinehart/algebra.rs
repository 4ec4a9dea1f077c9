use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::complex::{render_combination, BasisLabel};
use crate::error::{Error, Result};
use crate::polyring::module::{module_groebner, ModuleOrder, ModuleVector};
use crate::polyring::poly::format_monomial;
use crate::polyring::{Monomial, Polynomial, QuotientRing};

/// An element of the free module `L`, as coefficients on the basis `e_1..e_r`.
pub type LElement = Vec<Polynomial>;

/// A Lie-Rinehart algebra free of rank `r` over a quotient ring `S`.
///
/// `anchor[i][j] = a(e_i)(x_j)`; `[e_i, e_j] = sum_k bracket[(i, j)][k] e_k` for `i < j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieRinehartAlgebra {
    base: QuotientRing,
    anchor: Vec<Vec<Polynomial>>,
    bracket: BTreeMap<(usize, usize), Vec<Polynomial>>,
}

impl LieRinehartAlgebra {
    /// Validates shapes and normal-forms all data. Pairs with `i >= j` are rejected.
    pub fn new(base: QuotientRing, anchor: Vec<Vec<Polynomial>>, bracket: BTreeMap<(usize, usize), Vec<Polynomial>>) -> Result<Self> {
        let n = base.nvars();
        let r = anchor.len();
        for row in &anchor {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: row.len() });
            }
        }
        let anchor = anchor.iter().map(|row| row.iter().map(|p| base.nf(p)).collect()).collect();
        let mut clean = BTreeMap::new();
        for ((i, j), c) in bracket {
            if i >= j || j >= r {
                return Err(Error::Precondition(format!("bracket entry ({i}, {j}) must satisfy i < j < rank")));
            }
            if c.len() != r {
                return Err(Error::DimensionMismatch { expected: r, found: c.len() });
            }
            let c: Vec<Polynomial> = c.iter().map(|p| base.nf(p)).collect();
            if c.iter().any(|p| !p.is_zero()) {
                clean.insert((i, j), c);
            }
        }
        Ok(LieRinehartAlgebra { base, anchor, bracket: clean })
    }

    /// Zero anchor and zero bracket.
    pub fn abelian(base: QuotientRing, rank: usize) -> Self {
        let n = base.nvars();
        let anchor = vec![vec![base.zero(); n]; rank];
        LieRinehartAlgebra { base, anchor, bracket: BTreeMap::new() }
    }

    /// A Lie algebra over Q: no variables, rational structure constants `(i, j, k, c)`.
    pub fn lie_algebra(rank: usize, constants: &[(usize, usize, i64, usize)]) -> Result<Self> {
        let base = QuotientRing::polynomial(&[]);
        let mut bracket: BTreeMap<(usize, usize), Vec<Polynomial>> = BTreeMap::new();
        for &(i, j, c, k) in constants {
            let entry = bracket.entry((i, j)).or_insert_with(|| vec![base.zero(); rank]);
            entry[k] = &entry[k] + &base.constant(crate::qlinalg::q(c));
        }
        Self::new(base, vec![Vec::new(); rank], bracket)
    }

    /// The Lie-Rinehart algebra spanned by derivations of the base given by coefficient vectors
    /// (`gens[k][j]` is the coefficient of `d/dx_j`). The generators must be independent over the
    /// fraction field and their brackets must lie in their span.
    pub fn from_derivations(base: QuotientRing, gens: &[Vec<Polynomial>]) -> Result<Self> {
        if !independent(&base, gens) {
            return Err(Error::Precondition("derivations are not linearly independent".into()));
        }
        let bracket = bracket_structure_constants(&base, gens)?;
        Self::new(base, gens.to_vec(), bracket)
    }

    pub fn base(&self) -> &QuotientRing {
        &self.base
    }

    pub fn rank(&self) -> usize {
        self.anchor.len()
    }

    pub fn anchor(&self) -> &[Vec<Polynomial>] {
        &self.anchor
    }

    pub fn bracket_table(&self) -> &BTreeMap<(usize, usize), Vec<Polynomial>> {
        &self.bracket
    }

    /// Structure functions of `[e_i, e_j]` for any ordered pair.
    pub fn bracket(&self, i: usize, j: usize) -> LElement {
        let zero = || vec![self.base.zero(); self.rank()];
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => zero(),
            std::cmp::Ordering::Less => self.bracket.get(&(i, j)).cloned().unwrap_or_else(zero),
            std::cmp::Ordering::Greater => self.bracket.get(&(j, i)).map(|c| c.iter().map(|p| -p).collect()).unwrap_or_else(zero),
        }
    }

    pub fn is_abelian(&self) -> bool {
        self.bracket.is_empty()
    }

    pub fn has_zero_anchor(&self) -> bool {
        self.anchor.iter().flatten().all(Polynomial::is_zero)
    }

    /// Same module with zero anchor and zero bracket: the symmetric side of PBW.
    pub fn associated_graded(&self) -> Self {
        Self::abelian(self.base.clone(), self.rank())
    }

    /// `a(e_i)(f)` on the given representative, without normal form.
    pub fn derive(&self, i: usize, f: &Polynomial) -> Polynomial {
        if self.base.nvars() == 0 {
            return Polynomial::zero(0, f.order());
        }
        f.apply_derivation(&self.anchor[i])
    }

    /// `a(X)(f)` in the base ring.
    pub fn anchor_apply(&self, x: &LElement, f: &Polynomial) -> Polynomial {
        let mut out = self.base.zero();
        for (i, c) in x.iter().enumerate() {
            if !c.is_zero() {
                out = &out + &(c * &self.derive(i, f));
            }
        }
        self.base.nf(&out)
    }

    /// `[X, Y] = sum f_a g_b [e_a, e_b] + f_a a(e_a)(g_b) e_b - g_b a(e_b)(f_a) e_a`.
    pub fn bracket_elements(&self, x: &LElement, y: &LElement) -> LElement {
        let r = self.rank();
        let mut out = vec![self.base.zero(); r];
        for a in 0..r {
            if x[a].is_zero() {
                continue;
            }
            for b in 0..r {
                if y[b].is_zero() {
                    continue;
                }
                let fg = &x[a] * &y[b];
                for (k, c) in self.bracket(a, b).iter().enumerate() {
                    if !c.is_zero() {
                        out[k] = &out[k] + &(&fg * c);
                    }
                }
                out[b] = &out[b] + &(&x[a] * &self.derive(a, &y[b]));
                out[a] = &out[a] - &(&y[b] * &self.derive(b, &x[a]));
            }
        }
        out.iter().map(|p| self.base.nf(p)).collect()
    }

    pub fn basis_element(&self, i: usize) -> LElement {
        let mut v = vec![self.base.zero(); self.rank()];
        v[i] = self.base.one();
        v
    }

    pub fn display_element(&self, x: &LElement) -> String {
        let vars = self.base.vars();
        let mut terms = Vec::new();
        for (i, c) in x.iter().enumerate() {
            for (m, a) in c.terms() {
                terms.push((a.clone(), BasisLabel::new(format_monomial(m, vars), format!("e{}", i + 1))));
            }
        }
        render_combination(terms.iter().map(|(c, l)| (c, l)))
    }
}

/// Whether the vectors are independent over the fraction field: some maximal minor is nonzero.
fn independent(base: &QuotientRing, gens: &[Vec<Polynomial>]) -> bool {
    let k = gens.len();
    let n = base.nvars();
    if k == 0 {
        return true;
    }
    if k > n {
        return false;
    }
    crate::wedge::subsets(n, k).iter().any(|cols| {
        let m: Vec<Vec<Polynomial>> = gens.iter().map(|g| cols.iter().map(|&c| g[c].clone()).collect()).collect();
        !base.nf(&determinant(&m)).is_zero()
    })
}

/// Determinant by Laplace expansion along the first row.
pub fn determinant(m: &[Vec<Polynomial>]) -> Polynomial {
    let k = m.len();
    match k {
        0 => panic!("determinant of an empty matrix"),
        1 => m[0][0].clone(),
        _ => {
            let mut acc = Polynomial::zero(m[0][0].nvars(), m[0][0].order());
            for c in 0..k {
                if m[0][c].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Polynomial>> =
                    m[1..].iter().map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, p)| p.clone()).collect()).collect();
                let t = &m[0][c] * &determinant(&minor);
                acc = if c % 2 == 0 { &acc + &t } else { &acc - &t };
            }
            acc
        }
    }
}

/// Commutator of two derivations given by coefficient vectors.
pub fn derivation_commutator(d: &[Polynomial], e: &[Polynomial]) -> Vec<Polynomial> {
    (0..d.len()).map(|l| &e[l].apply_derivation(d) - &d[l].apply_derivation(e)).collect()
}

/// Expresses `[D_i, D_j]` in terms of the `D_k`: coefficients from the normal form of
/// `([D_i, D_j], 0)` against the position-over-term basis of the rows `(D_k, e_k)`.
pub fn bracket_structure_constants(base: &QuotientRing, gens: &[Vec<Polynomial>]) -> Result<BTreeMap<(usize, usize), Vec<Polynomial>>> {
    let k = gens.len();
    let n = base.nvars();
    let mut out = BTreeMap::new();
    if k < 2 {
        return Ok(out);
    }
    let rank = n + k;
    let mut rows = Vec::new();
    for (idx, g) in gens.iter().enumerate() {
        let mut row = ModuleVector::zero(rank, n);
        for (l, p) in g.iter().enumerate() {
            row = row.add(&ModuleVector::basis_multiple(rank, l, p));
        }
        row.add_term((n + idx, Monomial::one(n)), num_traits::One::one());
        rows.push(row);
    }
    for g in base.gb().generators() {
        for l in 0..n {
            rows.push(ModuleVector::basis_multiple(rank, l, g));
        }
    }
    let gb = module_groebner(&rows, rank, n, ModuleOrder::Pot(base.order()));
    for i in 0..k {
        for j in i + 1..k {
            let w = derivation_commutator(&gens[i], &gens[j]);
            let mut target = ModuleVector::zero(rank, n);
            for (l, p) in w.iter().enumerate() {
                target = target.add(&ModuleVector::basis_multiple(rank, l, p));
            }
            let rem = gb.normal_form(&target);
            let entries = rem.entries(base.order());
            if entries[..n].iter().any(|p| !base.nf(p).is_zero()) {
                return Err(Error::Inconsistent(format!("bracket of generators {} and {} leaves their span", i + 1, j + 1)));
            }
            let c: Vec<Polynomial> = entries[n..].iter().map(|p| base.nf(&-p)).collect();
            if c.iter().any(|p| !p.is_zero()) {
                out.insert((i, j), c);
            }
        }
    }
    Ok(out)
}

/// Outcome of the structural checks on a Lie-Rinehart algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub anchor_preserves_ideal: bool,
    pub jacobi: bool,
    pub anchor_homomorphism: bool,
    pub leibniz: bool,
    pub violations: Vec<String>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.anchor_preserves_ideal && self.jacobi && self.anchor_homomorphism && self.leibniz
    }
}

pub fn lr_check_axioms(l: &LieRinehartAlgebra) -> AxiomReport {
    let s = l.base();
    let r = l.rank();
    let n = s.nvars();
    let mut violations = Vec::new();

    let mut anchor_preserves_ideal = true;
    for i in 0..r {
        for g in s.gb().generators() {
            if !s.is_member(&l.derive(i, g)) {
                anchor_preserves_ideal = false;
                violations.push(format!("a(e{})({}) is not in the ideal", i + 1, s.display(g)));
            }
        }
    }

    let mut jacobi = true;
    for i in 0..r {
        for j in i + 1..r {
            for k in j + 1..r {
                let (ei, ej, ek) = (l.basis_element(i), l.basis_element(j), l.basis_element(k));
                let t1 = l.bracket_elements(&l.bracket_elements(&ei, &ej), &ek);
                let t2 = l.bracket_elements(&l.bracket_elements(&ej, &ek), &ei);
                let t3 = l.bracket_elements(&l.bracket_elements(&ek, &ei), &ej);
                let sum: Vec<Polynomial> = (0..r).map(|a| s.nf(&(&(&t1[a] + &t2[a]) + &t3[a]))).collect();
                if sum.iter().any(|p| !p.is_zero()) {
                    jacobi = false;
                    violations.push(format!("Jacobi fails on (e{}, e{}, e{}): {}", i + 1, j + 1, k + 1, l.display_element(&sum)));
                }
            }
        }
    }

    let mut anchor_homomorphism = true;
    for i in 0..r {
        for j in i + 1..r {
            let c = l.bracket(i, j);
            for v in 0..n {
                let x = s.var(v);
                let lhs = l.anchor_apply(&c, &x);
                let rhs = s.nf(&(&l.derive(i, &l.derive(j, &x)) - &l.derive(j, &l.derive(i, &x))));
                if lhs != rhs {
                    anchor_homomorphism = false;
                    violations.push(format!(
                        "a([e{}, e{}])({}) = {} but the commutator gives {}",
                        i + 1,
                        j + 1,
                        s.vars()[v],
                        s.display(&lhs),
                        s.display(&rhs)
                    ));
                }
            }
        }
    }

    // [X, f Y] = f [X, Y] + a(X)(f) Y on sample coefficients
    let mut leibniz = true;
    let mut samples = vec![s.one()];
    for v in 0..n {
        samples.push(s.var(v));
        samples.push(s.nf(&(&s.var(v) * &s.var((v + 1) % n))));
    }
    for i in 0..r {
        for j in 0..r {
            let (x, y) = (l.basis_element(i), l.basis_element(j));
            let xy = l.bracket_elements(&x, &y);
            for f in &samples {
                let fy: LElement = y.iter().map(|p| s.mul(f, p)).collect();
                let lhs = l.bracket_elements(&x, &fy);
                let af = l.anchor_apply(&x, f);
                let rhs: LElement = (0..r).map(|a| s.nf(&(&(f * &xy[a]) + &(&af * &y[a])))).collect();
                if lhs != rhs {
                    leibniz = false;
                    violations.push(format!("Leibniz fails for [e{}, ({}) e{}]", i + 1, s.display(f), j + 1));
                }
            }
        }
    }

    AxiomReport { anchor_preserves_ideal, jacobi, anchor_homomorphism, leibniz, violations }
}

/// A flat `L`-module structure on `(S/J)^m`: `nabla_i(v) = a(e_i)(v) + A_i v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LRModule {
    ring: QuotientRing,
    rank: usize,
    connection: Vec<Vec<Vec<Polynomial>>>,
}

impl LRModule {
    /// `S` itself with the zero connection.
    pub fn trivial(l: &LieRinehartAlgebra) -> Self {
        Self::quotient(l, &[])
    }

    /// `S/J` of rank one with the zero connection.
    pub fn quotient(l: &LieRinehartAlgebra, extra: &[Polynomial]) -> Self {
        let ring = l.base().extend(extra);
        let connection = vec![vec![vec![ring.zero()]]; l.rank()];
        LRModule { ring, rank: 1, connection }
    }

    /// Free module of rank `m` over `S/J` with connection matrices `A_1..A_r` (each `m x m`).
    pub fn new(l: &LieRinehartAlgebra, extra: &[Polynomial], connection: Vec<Vec<Vec<Polynomial>>>) -> Result<Self> {
        let ring = l.base().extend(extra);
        if connection.len() != l.rank() {
            return Err(Error::DimensionMismatch { expected: l.rank(), found: connection.len() });
        }
        let m = connection.first().map_or(1, Vec::len);
        for a in &connection {
            if a.len() != m || a.iter().any(|row| row.len() != m) {
                return Err(Error::Precondition(format!("connection matrices must all be {m} x {m}")));
            }
        }
        let connection = connection.iter().map(|a| a.iter().map(|row| row.iter().map(|p| ring.nf(p)).collect()).collect()).collect();
        Ok(LRModule { ring, rank: m, connection })
    }

    pub fn ring(&self) -> &QuotientRing {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn connection(&self) -> &[Vec<Vec<Polynomial>>] {
        &self.connection
    }

    /// `nabla_{e_i}(v)` in normal form.
    pub fn act(&self, l: &LieRinehartAlgebra, i: usize, v: &[Polynomial]) -> Vec<Polynomial> {
        (0..self.rank)
            .map(|k| {
                let mut acc = l.derive(i, &v[k]);
                for (a, vj) in self.connection[i][k].iter().zip(v) {
                    if !a.is_zero() && !vj.is_zero() {
                        acc = &acc + &(a * vj);
                    }
                }
                self.ring.nf(&acc)
            })
            .collect()
    }

    /// Whether every anchor derivation maps the ideal `J` into itself and `J` contains the base ideal.
    pub fn ideal_preserved(&self, l: &LieRinehartAlgebra) -> bool {
        l.base().gb().generators().iter().all(|g| self.ring.is_member(g))
            && (0..l.rank()).all(|i| self.ring.gb().generators().iter().all(|g| self.ring.is_member(&l.derive(i, g))))
    }
}

/// Curvature check; on failure carries the first non-flat pair and its curvature matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlatnessReport {
    pub flat: bool,
    pub ideal_preserved: bool,
    pub witness: Option<(usize, usize, Vec<Vec<String>>)>,
}

pub fn connection_flatness(l: &LieRinehartAlgebra, e: &LRModule) -> FlatnessReport {
    let ring = e.ring();
    let m = e.rank();
    let ideal_preserved = e.ideal_preserved(l);
    let a = e.connection();
    for i in 0..l.rank() {
        for j in i + 1..l.rank() {
            let c = l.bracket(i, j);
            let mut curvature = vec![vec![ring.zero(); m]; m];
            for (row, crow) in curvature.iter_mut().enumerate() {
                for (col, entry) in crow.iter_mut().enumerate() {
                    let mut acc = &l.derive(i, &a[j][row][col]) - &l.derive(j, &a[i][row][col]);
                    for t in 0..m {
                        acc = &acc + &(&a[i][row][t] * &a[j][t][col]);
                        acc = &acc - &(&a[j][row][t] * &a[i][t][col]);
                    }
                    for (k, ck) in c.iter().enumerate() {
                        acc = &acc - &(ck * &a[k][row][col]);
                    }
                    *entry = ring.nf(&acc);
                }
            }
            if curvature.iter().flatten().any(|p| !p.is_zero()) {
                let shown = curvature.iter().map(|row| row.iter().map(|p| ring.display(p)).collect()).collect();
                return FlatnessReport { flat: false, ideal_preserved, witness: Some((i, j, shown)) };
            }
        }
    }
    FlatnessReport { flat: true, ideal_preserved, witness: None }
}

/// Human-readable derivation, e.g. `x*∂x - y*∂y`.
pub fn display_derivation(vars: &[String], d: &[Polynomial]) -> String {
    let mut terms: Vec<(crate::qlinalg::Rational, BasisLabel, (usize, Monomial))> = Vec::new();
    for (l, p) in d.iter().enumerate() {
        for (m, c) in p.terms() {
            terms.push((c.clone(), BasisLabel::new(format_monomial(m, vars), format!("∂{}", vars[l])), (l, m.clone())));
        }
    }
    if let Some(p) = d.first() {
        let order = ModuleOrder::top(p.order());
        terms.sort_by(|a, b| order.cmp(&b.2, &a.2));
    }
    render_combination(terms.iter().map(|(c, l, _)| (c, l)))
}
