//! Exact linear algebra over the rationals.
//!
//! Matrices are stored as sorted sparse rows. Every elimination goes through
//! the reduced row echelon form, which is unique, so ranks, kernels, particular
//! solutions and coset representatives do not depend on the order in which
//! entries or rows were supplied.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Shorthand for an integer-valued rational.
pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `num / den`.
pub fn qf(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Sparse row: strictly increasing column indices, no stored zeros.
pub type SparseRow = Vec<(usize, Rational)>;

/// Sparse rational matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseRow>,
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{}", self.rows, self.cols)?;
        for (i, row) in self.data.iter().enumerate() {
            if !row.is_empty() {
                write!(f, "  {i}:")?;
                for (c, v) in row {
                    write!(f, " ({c}, {v})")?;
                }
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i].push((i, Rational::one()));
        }
        m
    }

    /// Builds a matrix from dense integer rows.
    pub fn from_dense_i64(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged dense matrix");
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, q(v));
            }
        }
        m
    }

    /// Builds a matrix whose rows are the given dense vectors.
    pub fn from_rows(cols: usize, rows: &[Vec<Rational>]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols);
            m.data[i] = dense_to_sparse(r);
        }
        m
    }

    /// Builds a matrix from `(row, col, value)` triples; duplicates are summed.
    pub fn from_triplets(rows: usize, cols: usize, entries: impl IntoIterator<Item = (usize, usize, Rational)>) -> Self {
        let mut acc: Vec<BTreeMap<usize, Rational>> = vec![BTreeMap::new(); rows];
        for (r, c, v) in entries {
            assert!(r < rows && c < cols, "entry ({r}, {c}) out of range for {rows}x{cols}");
            *acc[r].entry(c).or_insert_with(Rational::zero) += v;
        }
        let data = acc
            .into_iter()
            .map(|m| m.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        QMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &SparseRow {
        &self.data[i]
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        match self.data[r].binary_search_by_key(&c, |(k, _)| *k) {
            Ok(pos) => self.data[r][pos].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        assert!(r < self.rows && c < self.cols, "entry ({r}, {c}) out of range");
        let row = &mut self.data[r];
        match row.binary_search_by_key(&c, |(k, _)| *k) {
            Ok(pos) => {
                if v.is_zero() {
                    row.remove(pos);
                } else {
                    row[pos].1 = v;
                }
            }
            Err(pos) => {
                if !v.is_zero() {
                    row.insert(pos, (c, v));
                }
            }
        }
    }

    pub fn transpose(&self) -> QMatrix {
        let mut data = vec![Vec::new(); self.cols];
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row {
                data[*j].push((i, v.clone()));
            }
        }
        QMatrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        self.data
            .iter()
            .map(|row| row.iter().fold(Rational::zero(), |acc, (j, a)| acc + a * &v[*j]))
            .collect()
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut data = Vec::with_capacity(self.rows);
        for row in &self.data {
            let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
            for (k, a) in row {
                for (j, b) in &other.data[*k] {
                    *acc.entry(*j).or_insert_with(Rational::zero) += a * b;
                }
            }
            data.push(acc.into_iter().filter(|(_, v)| !v.is_zero()).collect());
        }
        QMatrix { rows: self.rows, cols: other.cols, data }
    }

    /// Keeps only the listed rows and columns (in the given order).
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> QMatrix {
        let mut col_map = vec![usize::MAX; self.cols];
        for (new, &old) in cols.iter().enumerate() {
            col_map[old] = new;
        }
        let data = rows
            .iter()
            .map(|&r| {
                let mut row: SparseRow = self.data[r]
                    .iter()
                    .filter(|(c, _)| col_map[*c] != usize::MAX)
                    .map(|(c, v)| (col_map[*c], v.clone()))
                    .collect();
                row.sort_by_key(|(c, _)| *c);
                row
            })
            .collect();
        QMatrix { rows: rows.len(), cols: cols.len(), data }
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        self.data.iter().map(|r| sparse_to_dense(r, self.cols)).collect()
    }
}

pub fn dense_to_sparse(v: &[Rational]) -> SparseRow {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn sparse_to_dense(v: &SparseRow, len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// `a + factor * b` on sparse rows.
fn axpy(a: &SparseRow, factor: &Rational, b: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, factor * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + factor * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Reduced row echelon form of a set of sparse rows.
///
/// `rows` holds the nonzero rows of the RREF in increasing pivot order,
/// each normalized to a leading 1; `pivots[k]` is the pivot column of `rows[k]`.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub cols: usize,
    pub rows: Vec<SparseRow>,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against every pivot row; the result has zeros in all pivot columns.
    pub fn reduce(&self, v: &SparseRow) -> SparseRow {
        let mut v = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if let Ok(pos) = v.binary_search_by_key(&p, |(c, _)| *c) {
                let f = -v[pos].1.clone();
                v = axpy(&v, &f, row);
            }
        }
        v
    }

    pub fn contains(&self, v: &SparseRow) -> bool {
        self.reduce(v).is_empty()
    }
}

/// Computes the RREF of the given rows over `cols` columns.
pub fn rref_rows(cols: usize, input: impl IntoIterator<Item = SparseRow>) -> Echelon {
    // Forward phase: incremental echelon keyed by pivot column.
    let mut by_pivot: BTreeMap<usize, SparseRow> = BTreeMap::new();
    for mut row in input {
        loop {
            let Some((lead, lead_val)) = row.first().cloned() else { break };
            match by_pivot.get(&lead) {
                Some(prow) => {
                    let f = -lead_val;
                    row = axpy(&row, &f, prow);
                }
                None => {
                    let inv = lead_val.recip();
                    for (_, v) in row.iter_mut() {
                        *v *= &inv;
                    }
                    by_pivot.insert(lead, row);
                    break;
                }
            }
        }
    }
    // Backward phase: clear entries above each pivot, last pivot first.
    let pivots: Vec<usize> = by_pivot.keys().copied().collect();
    let mut rows: Vec<SparseRow> = by_pivot.into_values().collect();
    for k in (0..rows.len()).rev() {
        let p = pivots[k];
        let (upper, lower) = rows.split_at_mut(k);
        let prow = &lower[0];
        for r in upper.iter_mut() {
            if let Ok(pos) = r.binary_search_by_key(&p, |(c, _)| *c) {
                let f = -r[pos].1.clone();
                *r = axpy(r, &f, prow);
            }
        }
    }
    Echelon { cols, rows, pivots }
}

pub fn rref(m: &QMatrix) -> Echelon {
    rref_rows(m.cols, m.data.iter().cloned())
}

/// Exact rank.
pub fn rank(m: &QMatrix) -> usize {
    rref(m).rank()
}

/// A linear subspace of `Q^ambient_dim`, given by an independent spanning set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    pub ambient_dim: usize,
    pub basis: Vec<Vec<Rational>>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim)
            .map(|i| {
                let mut v = vec![Rational::zero(); ambient_dim];
                v[i] = Rational::one();
                v
            })
            .collect();
        Subspace { ambient_dim, basis }
    }

    /// Span of arbitrary vectors; the stored basis is the RREF of the spanning set.
    pub fn span(ambient_dim: usize, vectors: &[Vec<Rational>]) -> Self {
        let ech = rref_rows(ambient_dim, vectors.iter().map(|v| dense_to_sparse(v)));
        Self::from_echelon(&ech)
    }

    pub fn from_echelon(ech: &Echelon) -> Self {
        Subspace {
            ambient_dim: ech.cols,
            basis: ech.rows.iter().map(|r| sparse_to_dense(r, ech.cols)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn echelon(&self) -> Echelon {
        rref_rows(self.ambient_dim, self.basis.iter().map(|v| dense_to_sparse(v)))
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.echelon().contains(&dense_to_sparse(v))
    }
}

/// Basis of `{ v : M v = 0 }`, one vector per free column of the RREF.
pub fn kernel_basis(m: &QMatrix) -> Subspace {
    let ech = rref(m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Rational::zero(); m.cols];
        v[free] = Rational::one();
        for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
            if let Ok(pos) = row.binary_search_by_key(&free, |(c, _)| *c) {
                v[p] = -row[pos].1.clone();
            }
        }
        basis.push(v);
    }
    Subspace { ambient_dim: m.cols, basis }
}

/// Column space of `m`, as a subspace of `Q^rows`.
pub fn image(m: &QMatrix) -> Subspace {
    let t = m.transpose();
    Subspace::from_echelon(&rref(&t))
}

/// Dimension of `Z / B` together with canonical coset representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subquotient {
    pub dim: usize,
    pub representatives: Vec<Vec<Rational>>,
}

/// Computes `Z / B`. Representatives are the RREF of `Z` reduced modulo the RREF of `B`,
/// so they depend only on the two subspaces.
pub fn subquotient(z: &Subspace, b: &Subspace) -> Result<Subquotient> {
    if z.ambient_dim != b.ambient_dim {
        return Err(Error::DimensionMismatch { expected: z.ambient_dim, found: b.ambient_dim });
    }
    let z_ech = z.echelon();
    for (i, v) in b.basis.iter().enumerate() {
        if !z_ech.contains(&dense_to_sparse(v)) {
            return Err(Error::NotContained { index: i });
        }
    }
    let b_ech = b.echelon();
    let reduced: Vec<SparseRow> = z.basis.iter().map(|v| b_ech.reduce(&dense_to_sparse(v))).collect();
    let reps = rref_rows(z.ambient_dim, reduced);
    Ok(Subquotient {
        dim: reps.rank(),
        representatives: reps.rows.iter().map(|r| sparse_to_dense(r, z.ambient_dim)).collect(),
    })
}

/// Canonical particular solution of `M x = b` (free variables set to zero), or `None`.
pub fn solve_linear(m: &QMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(b.len(), m.rows, "right-hand side length must equal row count");
    let aug_cols = m.cols + 1;
    let rows = m.data.iter().zip(b).map(|(row, bi)| {
        let mut r = row.clone();
        if !bi.is_zero() {
            r.push((m.cols, bi.clone()));
        }
        r
    });
    let ech = rref_rows(aug_cols, rows);
    if ech.pivots.last() == Some(&m.cols) {
        return None;
    }
    let mut x = vec![Rational::zero(); m.cols];
    for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
        if let Some((c, v)) = row.last() {
            if *c == m.cols {
                x[p] = v.clone();
            }
        }
    }
    Some(x)
}

/// Largest absolute numerator among the entries; a cheap size measure for reports.
pub fn max_numerator_bits(m: &QMatrix) -> u64 {
    m.data
        .iter()
        .flatten()
        .map(|(_, v)| v.numer().abs().bits())
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qv(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&QMatrix::from_dense_i64(&[vec![1, 2], vec![2, 4]])), 1);
        assert_eq!(rank(&QMatrix::zeros(3, 4)), 0);
        assert_eq!(rank(&QMatrix::identity(3)), 3);
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_basis(&QMatrix::from_dense_i64(&[vec![1, 2], vec![2, 4]]));
        assert_eq!(k.basis, vec![qv(&[-2, 1])]);
        assert_eq!(kernel_basis(&QMatrix::identity(4)).dim(), 0);

        let m = QMatrix::from_dense_i64(&[vec![1, 1, 1]]);
        let k = kernel_basis(&m);
        assert_eq!(k.dim(), 2);
        for v in &k.basis {
            assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
        assert_eq!(k.basis, vec![qv(&[-1, 1, 0]), qv(&[-1, 0, 1])]);
    }

    #[test]
    fn subquotient_examples() {
        let z = Subspace::full(2);
        let b = Subspace::span(2, &[qv(&[1, 0])]);
        let sq = subquotient(&z, &b).unwrap();
        assert_eq!(sq.dim, 1);
        assert_eq!(sq.representatives, vec![qv(&[0, 1])]);

        assert_eq!(subquotient(&z, &z).unwrap().dim, 0);
        assert!(subquotient(&z, &z).unwrap().representatives.is_empty());

        let z3 = Subspace::full(3);
        let b3 = Subspace::span(3, &[qv(&[1, 1, 0])]);
        assert_eq!(subquotient(&z3, &b3).unwrap().dim, 2);
    }

    #[test]
    fn subquotient_rejects_non_containment() {
        let z = Subspace::span(2, &[qv(&[1, 0])]);
        let b = Subspace::span(2, &[qv(&[0, 1])]);
        assert!(matches!(subquotient(&z, &b), Err(Error::NotContained { index: 0 })));
    }

    #[test]
    fn solve_examples() {
        assert_eq!(solve_linear(&QMatrix::identity(2), &qv(&[3, 5])), Some(qv(&[3, 5])));
        let m = QMatrix::from_dense_i64(&[vec![1, 1]]);
        assert_eq!(solve_linear(&m, &qv(&[2])), Some(qv(&[2, 0])));
        assert_eq!(solve_linear(&QMatrix::from_dense_i64(&[vec![0]]), &qv(&[1])), None);
    }

    #[test]
    fn zero_differential_complex_cohomology_is_whole_space() {
        // With all differentials zero, Z = whole space and B = 0 in every degree.
        for n in 0..5 {
            let d = QMatrix::zeros(n, n);
            let z = kernel_basis(&d);
            let b = image(&d);
            assert_eq!(subquotient(&z, &b).unwrap().dim, n);
        }
    }

    #[test]
    fn rref_ignores_row_order() {
        let a = QMatrix::from_dense_i64(&[vec![0, 2, 4], vec![1, 1, 1], vec![1, 3, 5]]);
        let b = QMatrix::from_dense_i64(&[vec![1, 3, 5], vec![0, 2, 4], vec![1, 1, 1]]);
        assert_eq!(rref(&a).rows, rref(&b).rows);
    }
}
