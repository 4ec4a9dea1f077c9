//! Spec files: TOML on disk, or the same structure as JSON via `--spec-json`.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use rinehart_core::{LRModule, LieRinehartAlgebra, Polynomial, QuotientRing};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    /// Defining equation of a divisor, for `logder`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub divisor: Option<String>,
    pub ring: RingSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lie_rinehart: Option<LieRinehartSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<CoefficientSpec>,
    #[serde(default)]
    pub options: Options,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSpec {
    pub vars: Vec<String>,
    #[serde(default)]
    pub ideal: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieRinehartSpec {
    pub rank: usize,
    /// `anchor[i][j]` is the coefficient of `d/dx_j` in the image of `e_i`; empty means zero.
    #[serde(default)]
    pub anchor: Vec<Vec<String>>,
    /// Structure functions; when absent they are solved for from the anchor.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bracket: Option<Vec<BracketEntry>>,
}

/// `[e_i, e_j]` has coefficient `c` on `e_k`; indices start at 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoefficientSpec {
    /// Extra generators of the coefficient ideal.
    #[serde(default)]
    pub ideal: Vec<String>,
    #[serde(default = "one")]
    pub rank: usize,
    /// One `rank x rank` matrix per generator; absent means zero.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub connection: Option<Vec<Vec<Vec<String>>>>,
}

fn one() -> usize {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default = "default_d_max")]
    pub d_max: i64,
    #[serde(default = "default_window")]
    pub window: i64,
    #[serde(default = "default_order")]
    pub order: usize,
    #[serde(default = "default_tensor_degree_max")]
    pub tensor_degree_max: usize,
}

fn default_d_max() -> i64 {
    10
}
fn default_window() -> i64 {
    3
}
fn default_order() -> usize {
    3
}
fn default_tensor_degree_max() -> usize {
    3
}

impl Default for Options {
    fn default() -> Self {
        Options { d_max: default_d_max(), window: default_window(), order: default_order(), tensor_degree_max: default_tensor_degree_max() }
    }
}

impl SpecFile {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).context("invalid spec file")
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        serde_json::from_str(text).context("invalid JSON spec")
    }

    pub fn load(path: &Path, json: bool) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
        if json {
            Self::from_json_str(&text)
        } else {
            Self::from_toml_str(&text)
        }
    }

    pub fn ring(&self) -> Result<QuotientRing> {
        let vars: Vec<&str> = self.ring.vars.iter().map(String::as_str).collect();
        let mut seen = std::collections::BTreeSet::new();
        for v in &vars {
            if !seen.insert(*v) {
                bail!("variable `{v}` declared twice");
            }
        }
        let ideal: Vec<&str> = self.ring.ideal.iter().map(String::as_str).collect();
        QuotientRing::parse(&vars, &ideal).context("cannot parse the ring ideal")
    }

    pub fn algebra(&self) -> Result<LieRinehartAlgebra> {
        let ring = self.ring()?;
        let Some(lr) = &self.lie_rinehart else {
            bail!("this command needs a [lie_rinehart] section");
        };
        let parse = |s: &str| parse_poly(&ring, s);
        let anchor: Vec<Vec<Polynomial>> = if lr.anchor.is_empty() {
            vec![vec![ring.zero(); ring.nvars()]; lr.rank]
        } else {
            if lr.anchor.len() != lr.rank {
                bail!("anchor has {} rows but rank is {}", lr.anchor.len(), lr.rank);
            }
            lr.anchor.iter().map(|row| row.iter().map(|s| parse(s)).collect::<Result<_>>()).collect::<Result<_>>()?
        };
        match &lr.bracket {
            Some(entries) => {
                let mut bracket: BTreeMap<(usize, usize), Vec<Polynomial>> = BTreeMap::new();
                for e in entries {
                    if e.i == 0 || e.j == 0 || e.k == 0 || e.i > lr.rank || e.j > lr.rank || e.k > lr.rank {
                        bail!("bracket indices start at 1 and stop at the rank; got ({}, {}, {})", e.i, e.j, e.k);
                    }
                    let (i, j, sign) = if e.i < e.j { (e.i - 1, e.j - 1, 1) } else { (e.j - 1, e.i - 1, -1) };
                    if i == j {
                        bail!("bracket entry [e{}, e{}] pairs a generator with itself", e.i, e.j);
                    }
                    let c = parse(&e.c)?;
                    let c = if sign < 0 { -&c } else { c };
                    let row = bracket.entry((i, j)).or_insert_with(|| vec![ring.zero(); lr.rank]);
                    row[e.k - 1] = &row[e.k - 1] + &c;
                }
                Ok(LieRinehartAlgebra::new(ring, anchor, bracket)?)
            }
            None if anchor.iter().flatten().all(Polynomial::is_zero) => Ok(LieRinehartAlgebra::new(ring, anchor, BTreeMap::new())?),
            None => Ok(LieRinehartAlgebra::from_derivations(ring, &anchor)?),
        }
    }

    pub fn module(&self, l: &LieRinehartAlgebra) -> Result<LRModule> {
        let Some(c) = &self.coefficients else {
            return Ok(LRModule::trivial(l));
        };
        let ring = l.base();
        let extra: Vec<Polynomial> = c.ideal.iter().map(|s| parse_poly(ring, s)).collect::<Result<_>>()?;
        let connection = match &c.connection {
            Some(mats) => mats
                .iter()
                .map(|m| m.iter().map(|row| row.iter().map(|s| parse_poly(ring, s)).collect::<Result<_>>()).collect::<Result<_>>())
                .collect::<Result<_>>()?,
            None => vec![vec![vec![ring.zero(); c.rank]; c.rank]; l.rank()],
        };
        Ok(LRModule::new(l, &extra, connection)?)
    }
}

pub fn parse_poly(ring: &QuotientRing, s: &str) -> Result<Polynomial> {
    ring.parse_element(s).with_context(|| format!("cannot parse `{s}`"))
}

/// Identifiers of a polynomial string in alphabetical order, for `logder --f` without a spec.
pub fn infer_vars(f: &str) -> Vec<String> {
    let mut names = std::collections::BTreeSet::new();
    let mut current = String::new();
    for ch in f.chars().chain(std::iter::once(' ')) {
        if ch.is_alphanumeric() || ch == '_' {
            current.push(ch);
        } else if !current.is_empty() {
            if !current.chars().next().unwrap().is_ascii_digit() {
                names.insert(current.clone());
            }
            current.clear();
        }
    }
    names.into_iter().collect()
}
