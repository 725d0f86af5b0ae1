//! Root-system data for the supported Cartan types.
//!
//! Everything is expressed in the basis of fundamental weights. The Cartan
//! matrix follows the convention `cartan[i][j] = ⟨α_j, α_i∨⟩`, so the
//! coordinates of the simple root `α_j` are the j-th column of the matrix.
//! Positive coroots are stored as expansions in the simple coroots, which
//! turns `⟨λ, α∨⟩` into a dot product with the weight's coordinates.

use std::fmt;
use std::path::Path as FsPath;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weight::{q, RatVec, Weight, Q};

const EMBEDDED_TABLES: &str = include_str!("../data/root_systems.json");

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum TypeLabel {
    A,
    B,
    C,
    D,
    G2,
}

impl TypeLabel {
    /// Ranks for which tables are shipped.
    pub fn supported_ranks(self) -> std::ops::RangeInclusive<usize> {
        match self {
            TypeLabel::A => 1..=4,
            TypeLabel::B | TypeLabel::C => 2..=4,
            TypeLabel::D => 3..=4,
            TypeLabel::G2 => 2..=2,
        }
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TypeLabel::A => "A",
            TypeLabel::B => "B",
            TypeLabel::C => "C",
            TypeLabel::D => "D",
            TypeLabel::G2 => "G2",
        };
        f.write_str(s)
    }
}

impl FromStr for TypeLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(TypeLabel::A),
            "B" => Ok(TypeLabel::B),
            "C" => Ok(TypeLabel::C),
            "D" => Ok(TypeLabel::D),
            "G2" | "G" => Ok(TypeLabel::G2),
            _ => Err(Error::UnknownLabel(s.to_string())),
        }
    }
}

/// One record of the root-system data file.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RootTableEntry {
    pub label: TypeLabel,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    pub symmetrizer: Vec<i64>,
    pub positive_coroots: Vec<Vec<i64>>,
}

/// The collection of shipped root-system tables.
#[derive(Clone, Debug)]
pub struct RootTables {
    entries: Vec<RootTableEntry>,
}

impl RootTables {
    /// Tables compiled into the crate.
    pub fn embedded() -> Self {
        Self::from_json(EMBEDDED_TABLES).expect("embedded root-system tables are well formed")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let entries: Vec<RootTableEntry> = serde_json::from_str(text)?;
        Ok(RootTables { entries })
    }

    pub fn from_path(path: impl AsRef<FsPath>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn entries(&self) -> &[RootTableEntry] {
        &self.entries
    }

    pub fn build(&self, label: TypeLabel, rank: usize) -> Result<RootSystem> {
        if !label.supported_ranks().contains(&rank) {
            return Err(Error::UnsupportedType { label, rank });
        }
        let entry = self
            .entries
            .iter()
            .find(|e| e.label == label && e.rank == rank)
            .ok_or(Error::UnsupportedType { label, rank })?;
        RootSystem::from_entry(entry)
    }
}

/// How each fundamental weight sits below a multiple of a single "box"
/// fundamental weight `ω_b`: `counts[k-1] · ω_b − ω_k` is a non-negative
/// integral combination of simple roots. Used to order L-S monomials whose
/// factors are not sorted by shape.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColumnDecomposition {
    pub box_index: usize,
    pub counts: Vec<i64>,
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    label: TypeLabel,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    cartan_inverse: Vec<Vec<Q>>,
    simple_roots: Vec<RatVec>,
    symmetrizer: Vec<i64>,
    positive_coroots: Vec<Vec<i64>>,
    rho: Weight,
}

impl RootSystem {
    /// Builds a supported root system from the embedded tables.
    pub fn build(label: TypeLabel, rank: usize) -> Result<Self> {
        RootTables::embedded().build(label, rank)
    }

    fn from_entry(entry: &RootTableEntry) -> Result<Self> {
        let n = entry.rank;
        let bad = |msg: String| Error::Data(format!("{}{}: {msg}", entry.label, n));
        if n == 0 || entry.cartan.len() != n || entry.cartan.iter().any(|row| row.len() != n) {
            return Err(bad("cartan matrix has the wrong size".into()));
        }
        if entry.symmetrizer.len() != n || entry.symmetrizer.iter().any(|&d| d <= 0) {
            return Err(bad("symmetrizer must hold rank positive integers".into()));
        }
        for i in 0..n {
            for j in 0..n {
                let c = entry.cartan[i][j];
                if (i == j && c != 2) || (i != j && c > 0) {
                    return Err(bad(format!("invalid cartan entry ({}, {})", i + 1, j + 1)));
                }
                if entry.symmetrizer[i] * c != entry.symmetrizer[j] * entry.cartan[j][i] {
                    return Err(bad("diag(d)·cartan is not symmetric".into()));
                }
            }
        }
        let sym: Vec<Vec<Q>> = (0..n)
            .map(|i| (0..n).map(|j| q(entry.symmetrizer[i] * entry.cartan[i][j])).collect())
            .collect();
        if !positive_definite(sym) {
            return Err(bad("diag(d)·cartan is not positive definite".into()));
        }
        let expected = match entry.label {
            TypeLabel::A => n * (n + 1) / 2,
            TypeLabel::B | TypeLabel::C => n * n,
            TypeLabel::D => n * (n - 1),
            TypeLabel::G2 => 6,
        };
        if entry.positive_coroots.len() != expected {
            return Err(bad(format!(
                "expected {expected} positive coroots, found {}",
                entry.positive_coroots.len()
            )));
        }
        for c in &entry.positive_coroots {
            if c.len() != n || c.iter().any(|&x| x < 0) || c.iter().all(|&x| x == 0) {
                return Err(bad(format!("malformed coroot {c:?}")));
            }
        }
        for i in 0..n {
            let unit: Vec<i64> = (0..n).map(|j| i64::from(i == j)).collect();
            if !entry.positive_coroots.contains(&unit) {
                return Err(bad(format!("simple coroot {} missing", i + 1)));
            }
        }
        let cartan_inverse = invert(&entry.cartan).ok_or_else(|| bad("singular cartan matrix".into()))?;
        let simple_roots = (0..n)
            .map(|j| RatVec::from_coords((0..n).map(|i| q(entry.cartan[i][j]))))
            .collect();
        Ok(RootSystem {
            label: entry.label,
            rank: n,
            cartan: entry.cartan.clone(),
            cartan_inverse,
            simple_roots,
            symmetrizer: entry.symmetrizer.clone(),
            positive_coroots: entry.positive_coroots.clone(),
            rho: Weight::new(&vec![1; n]),
        })
    }

    pub fn label(&self) -> TypeLabel {
        self.label
    }

    /// `A2`, `C3`, `G2`, ...
    pub fn name(&self) -> String {
        match self.label {
            TypeLabel::G2 => "G2".to_string(),
            l => format!("{l}{}", self.rank),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }

    pub fn positive_coroots(&self) -> &[Vec<i64>] {
        &self.positive_coroots
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.rank {
            Err(Error::IndexOutOfRange { index: i, rank: self.rank })
        } else {
            Ok(())
        }
    }

    fn check_rank(&self, actual: usize) -> Result<()> {
        if actual != self.rank {
            Err(Error::DimensionMismatch { expected: self.rank, actual })
        } else {
            Ok(())
        }
    }

    /// Fundamental-weight coordinates of the simple root `α_i`.
    pub fn simple_root(&self, i: usize) -> Result<&RatVec> {
        self.check_index(i)?;
        Ok(&self.simple_roots[i - 1])
    }

    pub fn fundamental(&self, k: usize) -> Result<Weight> {
        Weight::fundamental(self.rank, k)
    }

    /// `s_i(v) = v − ⟨v, α_i∨⟩ α_i`.
    pub fn reflect(&self, i: usize, v: &RatVec) -> Result<RatVec> {
        self.check_rank(v.rank())?;
        let c = v.pairing(i)?;
        Ok(v - &(&self.simple_roots[i - 1] * c))
    }

    /// Coordinates of `v` in the basis of simple roots.
    pub fn simple_root_coords(&self, v: &RatVec) -> RatVec {
        RatVec::from_coords(self.cartan_inverse.iter().map(|row| {
            row.iter().zip(v.coords()).fold(Q::zero(), |acc, (a, b)| acc + a * b)
        }))
    }

    /// Squared length of `v` in the invariant form `(α_i, α_j) = d_i · cartan[i][j]`.
    pub fn norm_squared(&self, v: &RatVec) -> Q {
        let x = self.simple_root_coords(v);
        x.coords()
            .iter()
            .zip(v.coords())
            .zip(&self.symmetrizer)
            .fold(Q::zero(), |acc, ((xi, vi), &d)| acc + xi * vi * q(d))
    }

    /// Expansion of `lambda − mu` in simple roots, if it is a non-negative
    /// integral combination (zero included).
    fn root_cone_coords(&self, mu: &Weight, lambda: &Weight) -> Option<Vec<i64>> {
        let x = self.simple_root_coords(&(lambda - mu).to_rat());
        x.coords()
            .iter()
            .map(|c| (c.is_integer() && !c.is_negative()).then(|| c.to_integer()))
            .collect()
    }

    /// Strict precedence `mu ≺ lambda`: `lambda − mu` is a nonzero sum of
    /// simple roots with non-negative integer coefficients.
    pub fn precedes(&self, mu: &Weight, lambda: &Weight) -> bool {
        if mu.rank() != self.rank || lambda.rank() != self.rank {
            return false;
        }
        matches!(self.root_cone_coords(mu, lambda), Some(x) if x.iter().any(|&c| c > 0))
    }

    /// `mu ⪯ lambda` (reflexive closure of [`precedes`](Self::precedes)).
    pub fn precedes_or_equal(&self, mu: &Weight, lambda: &Weight) -> bool {
        mu == lambda || self.precedes(mu, lambda)
    }

    /// Weyl's dimension formula `∏ ⟨λ+ρ, α∨⟩ / ⟨ρ, α∨⟩` over positive coroots.
    pub fn weyl_dim(&self, lambda: &Weight) -> Result<u64> {
        self.check_rank(lambda.rank())?;
        if !lambda.is_dominant() {
            return Err(Error::NonDominantWeight(lambda.to_string()));
        }
        let mut dim = Q::one();
        for coroot in &self.positive_coroots {
            let top: i64 = coroot.iter().zip(lambda.coords()).map(|(c, l)| c * (l + 1)).sum();
            let bottom: i64 = coroot.iter().sum();
            dim *= Q::new(top, bottom);
        }
        debug_assert!(dim.is_integer() && dim.is_positive());
        Ok(dim.to_integer() as u64)
    }

    /// The smallest box index `b` such that every `ω_k` lies below some
    /// multiple of `ω_b`, with the minimal multiples. `None` when no single
    /// fundamental weight generates the weight lattice modulo the root
    /// lattice (for instance D4).
    pub fn column_decomposition(&self) -> Option<ColumnDecomposition> {
        let n = self.rank;
        let limit = 2 * n as i64 + 2;
        'outer: for b in 1..=n {
            let box_weight = Weight::fundamental(n, b).ok()?;
            let mut counts = Vec::with_capacity(n);
            for k in 1..=n {
                let wk = Weight::fundamental(n, k).ok()?;
                match (1..=limit).find(|&c| self.root_cone_coords(&wk, &box_weight.scaled(c)).is_some()) {
                    Some(c) => counts.push(c),
                    None => continue 'outer,
                }
            }
            return Some(ColumnDecomposition { box_index: b, counts });
        }
        None
    }
}

/// Gauss-Jordan inverse over the rationals.
fn invert(m: &[Vec<i64>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Q> = row.iter().map(|&x| q(x)).collect();
            r.extend((0..n).map(|j| q(i64::from(i == j))));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let p = a[col][col];
        for x in a[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(pivot_row) {
                    *x -= f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Symmetric positive definiteness via exact Gaussian elimination: every
/// pivot must be positive.
fn positive_definite(mut a: Vec<Vec<Q>>) -> bool {
    let n = a.len();
    for k in 0..n {
        let p = a[k][k];
        if !p.is_positive() {
            return false;
        }
        for i in k + 1..n {
            let f = a[i][k] / p;
            for j in k..n {
                let v = a[k][j];
                a[i][j] -= f * v;
            }
        }
    }
    true
}
