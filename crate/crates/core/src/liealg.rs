//! Spans of matrix families, bracket closure, and the `Λ²ℝ¹⁶` splitting.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::clifford::{build, CliffordSystem, Variant};
use crate::error::{Error, Result};
use crate::exactmat::{RationalMatrix, SignedPermMatrix, SparseEchelon, SparseRow};
use crate::forms::{lie_action, Blade, KForm, LieOperator};

/// Integer matrix stored by rows, `(column, value)` sorted by column.
#[derive(Debug, Clone, PartialEq, Eq)]
struct SparseMat {
    n: usize,
    rows: Vec<Vec<(usize, BigInt)>>,
}

impl SparseMat {
    fn from_perm(p: &SignedPermMatrix) -> Self {
        let mut rows = vec![Vec::new(); p.order()];
        for (c, (r, s)) in p.images().enumerate() {
            rows[r].push((c, BigInt::from(s)));
        }
        Self { n: p.order(), rows }
    }

    /// Scaled by the l.c.m. of all denominators (spans are unaffected).
    fn from_dense(m: &RationalMatrix) -> Result<Self> {
        if m.rows() != m.cols() {
            return Err(Error::ShapeMismatch("matrix is not square".into()));
        }
        let n = m.rows();
        let l = (0..n)
            .flat_map(|r| m.row(r).iter())
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let rows = (0..n)
            .map(|r| {
                m.row(r)
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(c, v)| (c, (v * BigRational::from_integer(l.clone())).to_integer()))
                    .collect()
            })
            .collect();
        Ok(Self { n, rows })
    }

    fn get(&self, r: usize, c: usize) -> BigInt {
        self.rows[r]
            .iter()
            .find(|(j, _)| *j == c)
            .map_or_else(BigInt::zero, |(_, v)| v.clone())
    }

    fn is_skew(&self) -> bool {
        (0..self.n).all(|r| self.rows[r].iter().all(|(c, v)| self.get(*c, r) == -v.clone()))
    }

    fn mul(&self, other: &Self) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
                for (k, a) in row {
                    for (c, b) in &other.rows[*k] {
                        *acc.entry(*c).or_insert_with(BigInt::zero) += a * b;
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        Self { n: self.n, rows }
    }

    /// `[A, B] = AB − BA`.
    fn bracket(&self, other: &Self) -> Self {
        let ab = self.mul(other);
        let ba = other.mul(self);
        let rows = ab
            .rows
            .into_iter()
            .zip(ba.rows)
            .map(|(x, y)| {
                let mut acc: BTreeMap<usize, BigInt> = x.into_iter().collect();
                for (c, v) in y {
                    *acc.entry(c).or_insert_with(BigInt::zero) -= v;
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        Self { n: self.n, rows }
    }

    /// Coordinates: strict upper triangle for skew families, else all entries.
    fn vectorize(&self, skew: bool) -> SparseRow {
        let n = self.n;
        let mut out: SparseRow = Vec::new();
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                let idx = if skew {
                    if *c <= r {
                        continue;
                    }
                    r * n - r * (r + 1) / 2 + (c - r - 1)
                } else {
                    r * n + c
                };
                out.push((idx as u32, v.clone()));
            }
        }
        out.sort_by_key(|(c, _)| *c);
        out
    }

    fn trace_pairing(&self, other: &Self) -> BigInt {
        // tr(AᵗB) = Σ_{r,c} A_{rc} B_{rc}
        self.rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| {
                a.iter()
                    .filter_map(|(c, v)| b.iter().find(|(d, _)| d == c).map(|(_, w)| v * w))
                    .sum::<BigInt>()
            })
            .sum()
    }
}

/// A family of square matrices together with the span it generates.
#[derive(Debug, Clone)]
pub struct MatrixSpan {
    n: usize,
    skew: bool,
    gens: Vec<SparseMat>,
    echelon: SparseEchelon,
}

impl MatrixSpan {
    fn from_sparse(gens: Vec<SparseMat>) -> Result<Self> {
        let n = gens
            .first()
            .ok_or_else(|| Error::InvalidParameter("empty matrix family".into()))?
            .n;
        if let Some(g) = gens.iter().find(|g| g.n != n) {
            return Err(Error::OrderMismatch { left: n, right: g.n });
        }
        let skew = gens.iter().all(SparseMat::is_skew);
        let mut echelon = SparseEchelon::new();
        for g in &gens {
            echelon.insert(g.vectorize(skew));
        }
        Ok(Self {
            n,
            skew,
            gens,
            echelon,
        })
    }

    pub fn from_signed_perms(mats: &[SignedPermMatrix]) -> Result<Self> {
        Self::from_sparse(mats.iter().map(SparseMat::from_perm).collect())
    }

    pub fn from_dense(mats: &[RationalMatrix]) -> Result<Self> {
        Self::from_sparse(mats.iter().map(SparseMat::from_dense).collect::<Result<_>>()?)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Coordinates per matrix: `N(N−1)/2` for skew families, else `N²`.
    pub fn coordinate_count(&self) -> usize {
        if self.skew {
            self.n * (self.n - 1) / 2
        } else {
            self.n * self.n
        }
    }

    /// Generators as rows of a dense matrix in the span coordinates.
    pub fn coordinate_matrix(&self) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(self.gens.len(), self.coordinate_count());
        for (i, g) in self.gens.iter().enumerate() {
            for (c, v) in g.vectorize(self.skew) {
                m.set(i, c as usize, BigRational::from_integer(v));
            }
        }
        m
    }

    /// Rank of the family (fraction-free dense elimination).
    pub fn dim(&self) -> usize {
        let d = self.coordinate_matrix().rank();
        debug_assert_eq!(d, self.echelon.rank());
        d
    }

    /// Reduced row echelon basis of the span.
    pub fn basis(&self) -> RationalMatrix {
        self.coordinate_matrix().rref().0
    }

    fn contains_sparse(&self, m: &SparseMat) -> bool {
        if self.skew && !m.is_skew() {
            return false;
        }
        self.echelon.contains(m.vectorize(self.skew))
    }

    pub fn contains(&self, m: &SignedPermMatrix) -> bool {
        m.order() == self.n && self.contains_sparse(&SparseMat::from_perm(m))
    }

    /// True iff `[A, B]` lies in the span for every pair of generators.
    pub fn bracket_closed(&self) -> bool {
        let k = self.gens.len();
        let pairs: Vec<(usize, usize)> = (0..k).flat_map(|a| (a + 1..k).map(move |b| (a, b))).collect();
        pairs
            .par_iter()
            .all(|&(a, b)| self.contains_sparse(&self.gens[a].bracket(&self.gens[b])))
    }

    /// `tr(AᵗB) = 0` for every generator `A` of `self` and `B` of `other`.
    pub fn orthogonal_to(&self, other: &Self) -> bool {
        self.n == other.n
            && self
                .gens
                .par_iter()
                .all(|a| other.gens.iter().all(|b| a.trace_pairing(b).is_zero()))
    }

    /// Span of both families together.
    pub fn union(&self, other: &Self) -> Result<Self> {
        Self::from_sparse(self.gens.iter().chain(&other.gens).cloned().collect())
    }
}

/// Rank of a family of matrices.
pub fn span_dim(mats: &[SignedPermMatrix]) -> Result<usize> {
    Ok(MatrixSpan::from_signed_perms(mats)?.dim())
}

/// Whether the span of `mats` is closed under commutators.
pub fn bracket_closed(mats: &[SignedPermMatrix]) -> Result<bool> {
    Ok(MatrixSpan::from_signed_perms(mats)?.bracket_closed())
}

/// `P_{αβγ} = P_α P_β P_γ` for `α < β < γ`.
pub fn triple_compositions(c: &CliffordSystem) -> Vec<SignedPermMatrix> {
    let g = c.generators();
    let k = g.len();
    let mut out = Vec::new();
    for a in 0..k {
        for b in a + 1..k {
            let ab = c.composition(a, b);
            for x in &g[b + 1..] {
                out.push(ab.mul(x).expect("same order"));
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub dim_pairs: usize,
    pub dim_triples: usize,
    pub orthogonal: bool,
    pub total: usize,
}

/// `Λ²ℝ¹⁶` split by the pairs `S_{αβ}` and triples `S_{αβγ}` of `C_8`.
pub fn triple_span_decomposition() -> Result<Decomposition> {
    let c8 = build(8, Variant::Canonical)?;
    let pairs = MatrixSpan::from_signed_perms(&c8.compositions())?;
    let triples = MatrixSpan::from_signed_perms(&triple_compositions(&c8))?;
    Ok(Decomposition {
        dim_pairs: pairs.dim(),
        dim_triples: triples.dim(),
        orthogonal: pairs.orthogonal_to(&triples),
        total: pairs.union(&triples)?.dim(),
    })
}

/// `dim {X ∈ so(N) : ρ(X)φ = 0}`.
pub fn stabilizer_dim(form: &KForm) -> Result<usize> {
    let n = form.ambient();
    let mut columns: FxHashMap<Blade, u32> = FxHashMap::default();
    let mut echelon = SparseEchelon::new();
    for i in 0..n {
        for j in i + 1..n {
            let image = lie_action(&LieOperator::elementary(n, i, j)?, form)?;
            let l = image
                .terms()
                .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
            let mut row: SparseRow = image
                .terms()
                .map(|(idx, c)| {
                    let b = Blade::from_indices(&idx, n).expect("valid monomial");
                    let next = columns.len() as u32;
                    let col = *columns.entry(b).or_insert(next);
                    (col, (c * BigRational::from_integer(l.clone())).to_integer())
                })
                .collect();
            row.sort_by_key(|(c, _)| *c);
            echelon.insert(row);
        }
    }
    Ok(n * (n - 1) / 2 - echelon.rank())
}
