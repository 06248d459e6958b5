use std::fmt;
use std::ops::Neg;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::RationalMatrix;
use crate::error::{Error, Result};

/// Square matrix with exactly one entry `±1` in every row and column.
///
/// Stored by columns: column `a` sends `e_a` to `sign[a] * e_{target[a]}`.
/// Indices are 0-based internally; the JSON form is 1-based.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SignedPermMatrix {
    target: Vec<usize>,
    sign: Vec<i8>,
}

/// Outcome of [`SignedPermMatrix::classify`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatrixKind {
    SymmetricInvolution,
    SkewComplexStructure,
    Neither,
}

impl SignedPermMatrix {
    /// Builds a matrix from its column images `(target row, sign)`.
    pub fn from_images(images: Vec<(usize, i8)>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::NotSignedPermutation("order must be positive".into()));
        }
        let mut seen = vec![false; n];
        for &(t, s) in &images {
            if t >= n {
                return Err(Error::NotSignedPermutation(format!("target {t} out of range")));
            }
            if s != 1 && s != -1 {
                return Err(Error::NotSignedPermutation(format!("sign {s} is not ±1")));
            }
            if std::mem::replace(&mut seen[t], true) {
                return Err(Error::NotSignedPermutation(format!("row {t} hit twice")));
            }
        }
        let (target, sign) = images.into_iter().unzip();
        Ok(Self { target, sign })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            target: (0..n).collect(),
            sign: vec![1; n],
        }
    }

    /// `diag(d_1, ..., d_n)` with `d_i = ±1`.
    pub fn diagonal(signs: &[i8]) -> Result<Self> {
        Self::from_images(signs.iter().enumerate().map(|(i, &s)| (i, s)).collect())
    }

    /// `[[0, Id], [Id, 0]]` with blocks of order `half`.
    pub fn block_swap(half: usize) -> Self {
        let target = (0..2 * half).map(|a| (a + half) % (2 * half)).collect();
        Self {
            target,
            sign: vec![1; 2 * half],
        }
    }

    /// `[[Id, 0], [0, -Id]]` with blocks of order `half`.
    pub fn block_diag_split(half: usize) -> Self {
        let sign = (0..2 * half).map(|a| if a < half { 1 } else { -1 }).collect();
        Self {
            target: (0..2 * half).collect(),
            sign,
        }
    }

    /// `[[0, -X], [X, 0]]`; symmetric involution whenever `X` is a complex structure.
    pub fn off_diagonal_skew(x: &Self) -> Self {
        let zero = None;
        Self::block2(zero, Some(&x.neg()), Some(x), zero)
            .expect("off-diagonal assembly of a signed permutation is always valid")
    }

    /// Assembles `[[tl, tr], [bl, br]]` from equal-order blocks, `None` meaning zero.
    pub fn block2(
        tl: Option<&Self>,
        tr: Option<&Self>,
        bl: Option<&Self>,
        br: Option<&Self>,
    ) -> Result<Self> {
        let blocks = [tl, tr, bl, br];
        let n = blocks
            .iter()
            .flatten()
            .map(|b| b.order())
            .next()
            .ok_or_else(|| Error::NotSignedPermutation("all blocks are zero".into()))?;
        if let Some(b) = blocks.iter().flatten().find(|b| b.order() != n) {
            return Err(Error::OrderMismatch {
                left: n,
                right: b.order(),
            });
        }
        let mut images = vec![None; 2 * n];
        // block (r, c) occupies rows r*n.., columns c*n..
        for (idx, block) in blocks.iter().enumerate() {
            let Some(b) = block else { continue };
            let (r, c) = (idx / 2, idx % 2);
            for a in 0..n {
                let col = c * n + a;
                if images[col].is_some() {
                    return Err(Error::NotSignedPermutation(format!(
                        "column {} has two nonzero entries",
                        col + 1
                    )));
                }
                images[col] = Some((r * n + b.target[a], b.sign[a]));
            }
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(c, im)| im.ok_or_else(|| Error::NotSignedPermutation(format!("column {} is zero", c + 1))))
            .collect::<Result<Vec<_>>>()?;
        Self::from_images(images)
    }

    /// Kronecker product `self ⊗ other`: `self` gives the block pattern.
    pub fn kron(&self, other: &Self) -> Self {
        let m = other.order();
        let mut target = Vec::with_capacity(self.order() * m);
        let mut sign = Vec::with_capacity(self.order() * m);
        for a in 0..self.order() {
            for b in 0..m {
                target.push(self.target[a] * m + other.target[b]);
                sign.push(self.sign[a] * other.sign[b]);
            }
        }
        Self { target, sign }
    }

    /// Block-wise extension `self ⊗ Id_m`.
    pub fn kron_identity(&self, m: usize) -> Self {
        self.kron(&Self::identity(m))
    }

    pub fn order(&self) -> usize {
        self.target.len()
    }

    /// Image of basis vector `e_col`: `(row, sign)`.
    pub fn image(&self, col: usize) -> (usize, i8) {
        (self.target[col], self.sign[col])
    }

    pub fn images(&self) -> impl Iterator<Item = (usize, i8)> + '_ {
        self.target.iter().copied().zip(self.sign.iter().copied())
    }

    pub fn entry(&self, row: usize, col: usize) -> i8 {
        if self.target[col] == row {
            self.sign[col]
        } else {
            0
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        let (target, sign) = other
            .images()
            .map(|(b, s)| (self.target[b], s * self.sign[b]))
            .unzip();
        Ok(Self { target, sign })
    }

    /// Product of a non-empty sequence, left to right.
    pub fn product<'a>(mats: impl IntoIterator<Item = &'a Self>) -> Result<Self> {
        let mut it = mats.into_iter();
        let first = it
            .next()
            .ok_or_else(|| Error::InvalidParameter("empty product".into()))?
            .clone();
        it.try_fold(first, |acc, m| acc.mul(m))
    }

    pub fn transpose(&self) -> Self {
        let n = self.order();
        let mut target = vec![0; n];
        let mut sign = vec![0; n];
        for (a, (b, s)) in self.images().enumerate() {
            target[b] = a;
            sign[b] = s;
        }
        Self { target, sign }
    }

    pub fn negate(&self) -> Self {
        Self {
            target: self.target.clone(),
            sign: self.sign.iter().map(|s| -s).collect(),
        }
    }

    pub fn trace(&self) -> i64 {
        self.images()
            .enumerate()
            .filter(|&(a, (b, _))| a == b)
            .map(|(_, (_, s))| i64::from(s))
            .sum()
    }

    pub fn is_identity(&self) -> bool {
        self.images().enumerate().all(|(a, (b, s))| a == b && s == 1)
    }

    pub fn is_minus_identity(&self) -> bool {
        self.images().enumerate().all(|(a, (b, s))| a == b && s == -1)
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    pub fn is_skew(&self) -> bool {
        self.transpose() == self.negate()
    }

    pub fn square(&self) -> Self {
        self.mul(self).expect("same order")
    }

    pub fn is_complex_structure(&self) -> bool {
        self.is_skew() && self.square().is_minus_identity()
    }

    pub fn is_symmetric_involution(&self) -> bool {
        self.is_symmetric() && self.square().is_identity()
    }

    pub fn classify(&self) -> MatrixKind {
        if self.is_symmetric_involution() {
            MatrixKind::SymmetricInvolution
        } else if self.is_complex_structure() {
            MatrixKind::SkewComplexStructure
        } else {
            MatrixKind::Neither
        }
    }

    /// `AB = -BA`. Orders must agree; mismatched orders never anticommute.
    pub fn anticommutes(&self, other: &Self) -> bool {
        match (self.mul(other), other.mul(self)) {
            (Ok(ab), Ok(ba)) => ab == ba.negate(),
            _ => false,
        }
    }

    pub fn commutes(&self, other: &Self) -> bool {
        match (self.mul(other), other.mul(self)) {
            (Ok(ab), Ok(ba)) => ab == ba,
            _ => false,
        }
    }

    /// Applies the matrix to a vector: `y[target[a]] = sign[a] * x[a]`.
    pub fn apply<T>(&self, x: &[T]) -> Vec<T>
    where
        T: Clone + Neg<Output = T> + Zero,
    {
        assert_eq!(x.len(), self.order(), "vector length must match order");
        let mut y = vec![T::zero(); x.len()];
        for (a, (b, s)) in self.images().enumerate() {
            y[b] = if s > 0 { x[a].clone() } else { -x[a].clone() };
        }
        y
    }

    pub fn to_dense(&self) -> RationalMatrix {
        let n = self.order();
        let mut m = RationalMatrix::zeros(n, n);
        for (a, (b, s)) in self.images().enumerate() {
            let v = if s > 0 {
                BigRational::one()
            } else {
                -BigRational::one()
            };
            m.set(b, a, v);
        }
        m
    }

    /// Recovers a signed permutation from a dense matrix, if it is one.
    pub fn from_dense(m: &RationalMatrix) -> Result<Self> {
        if m.rows() != m.cols() {
            return Err(Error::ShapeMismatch("matrix is not square".into()));
        }
        let n = m.rows();
        let mut images = Vec::with_capacity(n);
        for c in 0..n {
            let mut hit = None;
            for r in 0..n {
                let v = m.get(r, c);
                if v.is_zero() {
                    continue;
                }
                let s = if v.is_one() {
                    1
                } else if (-v).is_one() {
                    -1
                } else {
                    return Err(Error::NotSignedPermutation(format!("entry {v} is not ±1")));
                };
                if hit.replace((r, s)).is_some() {
                    return Err(Error::NotSignedPermutation(format!(
                        "column {} has two nonzero entries",
                        c + 1
                    )));
                }
            }
            images.push(hit.ok_or_else(|| Error::NotSignedPermutation(format!("column {} is zero", c + 1)))?);
        }
        Self::from_images(images)
    }

    /// 1-based `(row, col, value)` triples sorted by `(row, col)`.
    pub fn entries(&self) -> Vec<(usize, usize, i8)> {
        let mut e: Vec<_> = self
            .images()
            .enumerate()
            .map(|(a, (b, s))| (b + 1, a + 1, s))
            .collect();
        e.sort_unstable();
        e
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            n: self.order(),
            entries: self.entries(),
        }
    }

    pub fn from_json(doc: &MatrixJson) -> Result<Self> {
        let mut images = vec![None; doc.n];
        for &(r, c, v) in &doc.entries {
            if r == 0 || c == 0 || r > doc.n || c > doc.n {
                return Err(Error::Json(format!("entry ({r}, {c}) outside 1..{}", doc.n)));
            }
            if images[c - 1].replace((r - 1, v)).is_some() {
                return Err(Error::NotSignedPermutation(format!("column {c} repeated")));
            }
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(c, im)| im.ok_or_else(|| Error::NotSignedPermutation(format!("column {} is zero", c + 1))))
            .collect::<Result<Vec<_>>>()?;
        Self::from_images(images)
    }
}

impl Neg for &SignedPermMatrix {
    type Output = SignedPermMatrix;
    fn neg(self) -> SignedPermMatrix {
        self.negate()
    }
}

impl fmt::Debug for SignedPermMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignedPermMatrix(n={}, ", self.order())?;
        f.debug_list()
            .entries(
                self.images()
                    .map(|(b, s)| if s > 0 { b as i64 + 1 } else { -(b as i64 + 1) }),
            )
            .finish()?;
        write!(f, ")")
    }
}

impl fmt::Display for SignedPermMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.order();
        for r in 0..n {
            let row: Vec<String> = (0..n).map(|c| format!("{:>2}", self.entry(r, c))).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// `{"n": N, "entries": [[row, col, value], ...]}`, 1-based, sorted by `(row, col)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub entries: Vec<(usize, usize, i8)>,
}
