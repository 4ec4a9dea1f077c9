//! Finite, weight-filtered cochain complexes over Q and their truncated cohomology.
//!
//! A complex is assembled once at the largest truncation level; lower levels are the
//! subcomplexes spanned by basis elements of weight at most the level.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qlinalg::{kernel_basis, rank, subquotient, QMatrix, Rational, Subspace};

/// Label of a basis element: a monomial part and a form part, either possibly empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisLabel {
    pub monomial: String,
    pub form: String,
}

impl BasisLabel {
    pub fn new(monomial: impl Into<String>, form: impl Into<String>) -> Self {
        BasisLabel { monomial: monomial.into(), form: form.into() }
    }
}

#[derive(Clone, Debug)]
pub struct FilteredComplex {
    pub weights: Vec<Vec<i64>>,
    pub labels: Vec<Vec<BasisLabel>>,
    /// `differentials[p]` maps degree `p` to degree `p + 1`.
    pub differentials: Vec<QMatrix>,
}

impl FilteredComplex {
    /// Checks shapes, filtration compatibility and `d o d = 0`.
    pub fn new(weights: Vec<Vec<i64>>, labels: Vec<Vec<BasisLabel>>, differentials: Vec<QMatrix>) -> Result<Self> {
        let top = weights.len();
        if labels.len() != top || differentials.len() + 1 != top.max(1) {
            return Err(Error::Inconsistent("complex degrees disagree".into()));
        }
        for (p, d) in differentials.iter().enumerate() {
            if d.cols() != weights[p].len() || d.rows() != weights[p + 1].len() {
                return Err(Error::DimensionMismatch { expected: weights[p].len(), found: d.cols() });
            }
            for r in 0..d.rows() {
                for (c, _) in d.row(r) {
                    if weights[p + 1][r] > weights[p][*c] {
                        return Err(Error::Filtration(format!("degree {p}: column {c} maps to higher weight")));
                    }
                }
            }
        }
        for p in 1..differentials.len() {
            if !differentials[p].mul(&differentials[p - 1]).is_zero() {
                return Err(Error::Inconsistent(format!("d^{p} o d^{} is not zero", p - 1)));
            }
        }
        Ok(FilteredComplex { weights, labels, differentials })
    }

    pub fn top_degree(&self) -> usize {
        self.weights.len() - 1
    }

    pub fn dim(&self, p: usize) -> usize {
        self.weights[p].len()
    }

    fn columns_at(&self, p: usize, level: i64) -> Vec<usize> {
        (0..self.dim(p)).filter(|&i| self.weights[p][i] <= level).collect()
    }

    fn embed(&self, p: usize, cols: &[usize], v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim(p)];
        for (k, &c) in cols.iter().enumerate() {
            out[c] = v[k].clone();
        }
        out
    }

    /// Cocycles of degree `p` with weight at most `level`, in full coordinates.
    pub fn cocycles(&self, p: usize, level: i64) -> Subspace {
        let cols = self.columns_at(p, level);
        let basis = if p < self.differentials.len() {
            let all_rows: Vec<usize> = (0..self.dim(p + 1)).collect();
            let sub = self.differentials[p].submatrix(&all_rows, &cols);
            kernel_basis(&sub).basis
        } else {
            (0..cols.len())
                .map(|i| {
                    let mut v = vec![Rational::zero(); cols.len()];
                    v[i] = Rational::one();
                    v
                })
                .collect()
        };
        let vectors: Vec<Vec<Rational>> = basis.iter().map(|v| self.embed(p, &cols, v)).collect();
        Subspace::span(self.dim(p), &vectors)
    }

    /// Coboundaries of degree `p` coming from weight at most `level`.
    pub fn coboundaries(&self, p: usize, level: i64) -> Subspace {
        if p == 0 {
            return Subspace::zero(self.dim(0));
        }
        let cols = self.columns_at(p - 1, level);
        let d = &self.differentials[p - 1];
        let vectors: Vec<Vec<Rational>> = cols
            .iter()
            .map(|&c| {
                let mut v = vec![Rational::zero(); self.dim(p - 1)];
                v[c] = Rational::one();
                d.mul_vec(&v)
            })
            .collect();
        Subspace::span(self.dim(p), &vectors)
    }

    /// Cohomology of the level-`level` subcomplex in degree `p`: dimension and representatives.
    pub fn cohomology(&self, p: usize, level: i64) -> Result<(usize, Vec<Vec<Rational>>)> {
        let z = self.cocycles(p, level);
        let b = self.coboundaries(p, level);
        let sq = subquotient(&z, &b)?;
        Ok((sq.dim, sq.representatives))
    }

    /// Renders a coordinate vector as a linear combination of the basis labels.
    pub fn render(&self, p: usize, v: &[Rational]) -> String {
        render_combination(v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (c, &self.labels[p][i])))
    }
}

/// Writes `sum c_i * label_i` with the canonical sign convention, e.g. `y*dx - 1/2*x^2*dy`.
pub fn render_combination<'a>(terms: impl Iterator<Item = (&'a Rational, &'a BasisLabel)>) -> String {
    let mut s = String::new();
    for (k, (c, label)) in terms.enumerate() {
        let neg = c.is_negative();
        if k == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let abs = c.abs();
        let mut parts: Vec<String> = Vec::new();
        if !abs.is_one() {
            parts.push(abs.to_string());
        }
        for part in [&label.monomial, &label.form] {
            if !part.is_empty() {
                parts.push(part.clone());
            }
        }
        if parts.is_empty() {
            parts.push("1".into());
        }
        s.push_str(&parts.join("*"));
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

/// Dimensions at one truncation level, with ranks of the maps into the next level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelEvidence {
    pub level: i64,
    pub dims: Vec<usize>,
    /// Rank of `H^p(level) -> H^p(level + 1)`; absent at the last level.
    pub comparison_ranks: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyReport {
    pub dims: Vec<usize>,
    pub representatives: Vec<Vec<String>>,
    pub stabilized: Vec<bool>,
    pub evidence: Vec<LevelEvidence>,
    pub d_max: i64,
    pub window: i64,
    pub warnings: Vec<String>,
}

impl CohomologyReport {
    pub fn all_stabilized(&self) -> bool {
        self.stabilized.iter().all(|&s| s)
    }
}

/// Truncated cohomology at levels `d_max - window ..= d_max`.
///
/// Degree `p` is stabilized when its dimension is constant over the window and every comparison
/// map between consecutive levels is an isomorphism.
pub fn filtered_cohomology(c: &FilteredComplex, d_max: i64, window: i64) -> Result<CohomologyReport> {
    if window < 2 || d_max <= window {
        return Err(Error::Precondition(format!("need d_max > window >= 2, got d_max={d_max}, window={window}")));
    }
    let levels: Vec<i64> = (d_max - window..=d_max).collect();
    let degrees = c.top_degree() + 1;
    let mut per_level: Vec<Vec<(usize, Vec<Vec<Rational>>)>> = Vec::new();
    for &l in &levels {
        per_level.push((0..degrees).map(|p| c.cohomology(p, l)).collect::<Result<_>>()?);
    }
    let mut evidence = Vec::new();
    let mut stabilized = vec![true; degrees];
    for (k, &l) in levels.iter().enumerate() {
        let dims: Vec<usize> = per_level[k].iter().map(|(d, _)| *d).collect();
        let comparison_ranks = if k + 1 < levels.len() {
            let next = levels[k + 1];
            let ranks: Vec<usize> = (0..degrees)
                .map(|p| {
                    let b = c.coboundaries(p, next);
                    let mut rows = b.basis.clone();
                    rows.extend(per_level[k][p].1.iter().cloned());
                    rank(&QMatrix::from_rows(c.dim(p), &rows)) - b.dim()
                })
                .collect();
            for p in 0..degrees {
                if ranks[p] != dims[p] || per_level[k + 1][p].0 != dims[p] {
                    stabilized[p] = false;
                }
            }
            Some(ranks)
        } else {
            None
        };
        evidence.push(LevelEvidence { level: l, dims, comparison_ranks });
    }
    let last = per_level.last().unwrap();
    let dims: Vec<usize> = last.iter().map(|(d, _)| *d).collect();
    let representatives: Vec<Vec<String>> =
        last.iter().enumerate().map(|(p, (_, reps))| reps.iter().map(|v| c.render(p, v)).collect()).collect();
    let warnings = stabilized
        .iter()
        .enumerate()
        .filter(|(_, s)| !**s)
        .map(|(p, _)| format!("degree {p} did not stabilize over levels {}..={}", d_max - window, d_max))
        .collect();
    Ok(CohomologyReport { dims, representatives, stabilized, evidence, d_max, window, warnings })
}
