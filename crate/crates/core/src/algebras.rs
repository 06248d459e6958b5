//! Quaternion and octonion multiplication operators.
//!
//! The octonion product is *defined* by the right multiplications `R_u`
//! below (`x·u = R_u x`); everything else, including `L_u`, is derived.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmat::{RationalMatrix, SignedPermMatrix};

/// Basis units `1, i, j, k, e, f, g, h`, in that order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Unit {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "i")]
    I,
    #[serde(rename = "j")]
    J,
    #[serde(rename = "k")]
    K,
    #[serde(rename = "e")]
    E,
    #[serde(rename = "f")]
    F,
    #[serde(rename = "g")]
    G,
    #[serde(rename = "h")]
    H,
}

impl Unit {
    pub const ALL: [Unit; 8] = [
        Unit::One,
        Unit::I,
        Unit::J,
        Unit::K,
        Unit::E,
        Unit::F,
        Unit::G,
        Unit::H,
    ];
    pub const IMAGINARY: [Unit; 7] = [Unit::I, Unit::J, Unit::K, Unit::E, Unit::F, Unit::G, Unit::H];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Self> {
        Self::ALL.get(i).copied()
    }

    pub fn label(self) -> char {
        b"1ijkefgh"[self.index()] as char
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

impl FromStr for Unit {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut chars = s.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => Unit::ALL
                .into_iter()
                .find(|u| u.label() == c)
                .ok_or_else(|| Error::InvalidParameter(format!("unknown unit {s:?}"))),
            _ => Err(Error::InvalidParameter(format!("unknown unit {s:?}"))),
        }
    }
}

fn from_rows(rows: &[[i8; 4]; 4]) -> SignedPermMatrix {
    let images = (0..4)
        .map(|c| {
            let r = (0..4).find(|&r| rows[r][c] != 0).expect("nonzero column");
            (r, rows[r][c])
        })
        .collect();
    SignedPermMatrix::from_images(images).expect("quaternion tables are signed permutations")
}

const RH_I: [[i8; 4]; 4] = [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]];
const RH_J: [[i8; 4]; 4] = [[0, 0, -1, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, 0]];
const RH_K: [[i8; 4]; 4] = [[0, 0, 0, -1], [0, 0, 1, 0], [0, -1, 0, 0], [1, 0, 0, 0]];
const LH_I: [[i8; 4]; 4] = [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]];
const LH_J: [[i8; 4]; 4] = [[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]];
const LH_K: [[i8; 4]; 4] = [[0, 0, 0, -1], [0, 0, -1, 0], [0, 1, 0, 0], [1, 0, 0, 0]];

fn quaternion_only(u: Unit) -> Result<()> {
    if u.index() < 4 {
        Ok(())
    } else {
        Err(Error::Unsupported(format!("unit {u} is not quaternionic")))
    }
}

fn quat_right(u: Unit) -> SignedPermMatrix {
    match u {
        Unit::One => SignedPermMatrix::identity(4),
        Unit::I => from_rows(&RH_I),
        Unit::J => from_rows(&RH_J),
        Unit::K => from_rows(&RH_K),
        _ => unreachable!(),
    }
}

fn quat_left(u: Unit) -> SignedPermMatrix {
    match u {
        Unit::One => SignedPermMatrix::identity(4),
        Unit::I => from_rows(&LH_I),
        Unit::J => from_rows(&LH_J),
        Unit::K => from_rows(&LH_K),
        _ => unreachable!(),
    }
}

/// Right multiplication by `u` on ℍ (dim 4) or 𝕆 (dim 8).
pub fn right_mult(u: Unit, dim: usize) -> Result<SignedPermMatrix> {
    match dim {
        4 => {
            quaternion_only(u)?;
            Ok(quat_right(u))
        }
        8 => Ok(octonion_right(u)),
        _ => Err(Error::InvalidParameter(format!(
            "dimension {dim} not in {{4, 8}}"
        ))),
    }
}

/// Left multiplication by `u`; on 𝕆 derived from the multiplication table.
pub fn left_mult(u: Unit, dim: usize) -> Result<SignedPermMatrix> {
    match dim {
        4 => {
            quaternion_only(u)?;
            Ok(quat_left(u))
        }
        8 => Ok(AlgebraTable::octonions().left_matrix(u)),
        _ => Err(Error::InvalidParameter(format!(
            "dimension {dim} not in {{4, 8}}"
        ))),
    }
}

fn octonion_right(u: Unit) -> SignedPermMatrix {
    let id4 = SignedPermMatrix::identity(4);
    let diag = |m: &SignedPermMatrix| {
        SignedPermMatrix::block2(Some(m), None, None, Some(&m.negate())).expect("valid blocks")
    };
    let anti =
        |m: &SignedPermMatrix| SignedPermMatrix::block2(None, Some(m), Some(m), None).expect("valid blocks");
    match u {
        Unit::One => SignedPermMatrix::identity(8),
        Unit::I => diag(&quat_right(Unit::I)),
        Unit::J => diag(&quat_right(Unit::J)),
        Unit::K => diag(&quat_right(Unit::K)),
        Unit::E => SignedPermMatrix::off_diagonal_skew(&id4),
        Unit::F => anti(&quat_left(Unit::I)),
        Unit::G => anti(&quat_left(Unit::J)),
        Unit::H => anti(&quat_left(Unit::K)),
    }
}

/// Structure constants of a composition algebra on basis units.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraTable {
    dim: usize,
    /// `table[a][b] = (c, s)` means `e_a·e_b = s·e_c`.
    table: Vec<Vec<(usize, i8)>>,
}

impl AlgebraTable {
    /// Reads `e_a·e_b` off column `a` of the right multiplication by `e_b`.
    fn from_right(dim: usize, right: impl Fn(Unit) -> SignedPermMatrix) -> Self {
        let rights: Vec<_> = Unit::ALL[..dim].iter().map(|&u| right(u)).collect();
        let table = (0..dim)
            .map(|a| (0..dim).map(|b| rights[b].image(a)).collect())
            .collect();
        Self { dim, table }
    }

    pub fn quaternions() -> Self {
        Self::from_right(4, quat_right)
    }

    pub fn octonions() -> Self {
        Self::from_right(8, octonion_right)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `e_a·e_b` as `(index, sign)`.
    pub fn product(&self, a: usize, b: usize) -> (usize, i8) {
        self.table[a][b]
    }

    /// Product of two general elements given by coordinates.
    pub fn mul<T>(&self, x: &[T], y: &[T]) -> Vec<T>
    where
        T: Clone + Zero + std::ops::Mul<Output = T> + std::ops::Neg<Output = T>,
    {
        let mut out = vec![T::zero(); self.dim];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let (c, s) = self.table[a][b];
                let v = xa.clone() * yb.clone();
                out[c] = out[c].clone() + if s > 0 { v } else { -v };
            }
        }
        out
    }

    /// Matrix of `x ↦ x·e_u`.
    pub fn right_matrix(&self, u: Unit) -> SignedPermMatrix {
        let images = (0..self.dim).map(|a| self.table[a][u.index()]).collect();
        SignedPermMatrix::from_images(images).expect("unit products permute the basis")
    }

    /// Matrix of `x ↦ e_u·x`.
    pub fn left_matrix(&self, u: Unit) -> SignedPermMatrix {
        let images = (0..self.dim).map(|b| self.table[u.index()][b]).collect();
        SignedPermMatrix::from_images(images).expect("unit products permute the basis")
    }

    /// The table as a text grid, rows `e_a`, columns `e_b`, entries `e_a·e_b`.
    pub fn grid(&self) -> String {
        let mut s = String::from("  *|");
        for b in 0..self.dim {
            s.push_str(&format!(" {:>2}", Unit::ALL[b].label()));
        }
        s.push('\n');
        s.push_str(&"-".repeat(4 + 3 * self.dim));
        s.push('\n');
        for a in 0..self.dim {
            s.push_str(&format!("  {}|", Unit::ALL[a].label()));
            for b in 0..self.dim {
                let (c, sg) = self.table[a][b];
                let sign = if sg < 0 { '-' } else { ' ' };
                s.push_str(&format!(" {sign}{}", Unit::ALL[c].label()));
            }
            s.push('\n');
        }
        s
    }
}

/// Block-wise extensions of the multiplication operators, used by the
/// large Clifford systems: `N = 32` (`R^ℍ_i, R^ℍ_j, L^ℍ_k` ⊗ Id₈),
/// `N = 64` (`R_i, R_j, R_e, R_h` ⊗ Id₈), `N = 128` (`R_e, R_h` ⊗ Id₁₆).
pub fn block_extension(u: Unit, order: usize) -> Result<SignedPermMatrix> {
    let unsupported = || Error::Unsupported(format!("no block extension of {u} at order {order}"));
    match (order, u) {
        (32, Unit::I | Unit::J) => Ok(quat_right(u).kron_identity(8)),
        (32, Unit::K) => Ok(quat_left(Unit::K).kron_identity(8)),
        (64, Unit::I | Unit::J | Unit::E | Unit::H) => Ok(octonion_right(u).kron_identity(8)),
        (128, Unit::E | Unit::H) => Ok(octonion_right(u).kron_identity(16)),
        _ => Err(unsupported()),
    }
}

/// The symmetric involution of ℝ¹⁶ attached to `w = u + r ∈ S⁸ ⊂ 𝕆 ⊕ ℝ`:
/// `[[r·Id, R_ū], [R_u, −r·Id]]`.
pub fn spin9_symmetric(u: &[BigRational; 8], r: &BigRational) -> Result<RationalMatrix> {
    let norm: BigRational = u.iter().map(|x| x * x).sum::<BigRational>() + r * r;
    if !norm.is_one() {
        return Err(Error::NonUnitPoint);
    }
    let rights: Vec<_> = Unit::ALL.iter().map(|&v| octonion_right(v)).collect();
    let mut m = RationalMatrix::zeros(16, 16);
    for i in 0..8 {
        m.set(i, i, r.clone());
        m.set(8 + i, 8 + i, -r.clone());
    }
    for (b, ub) in u.iter().enumerate() {
        if ub.is_zero() {
            continue;
        }
        // conjugation flips the imaginary coordinates
        let ub_bar = if b == 0 { ub.clone() } else { -ub.clone() };
        for (a, (t, s)) in rights[b].images().enumerate() {
            let sign = BigRational::from_integer(s.into());
            // lower-left block R_u
            let cur = m.get(8 + t, a).clone();
            m.set(8 + t, a, cur + ub * &sign);
            // upper-right block R_ū
            let cur = m.get(t, 8 + a).clone();
            m.set(t, 8 + a, cur + &ub_bar * &sign);
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn right_e_is_the_displayed_block() {
        let re = right_mult(Unit::E, 8).unwrap();
        for a in 0..4 {
            assert_eq!(re.entry(a, 4 + a), -1);
            assert_eq!(re.entry(4 + a, a), 1);
        }
        assert!(right_mult(Unit::One, 8).unwrap().is_identity());
    }

    #[test]
    fn right_f_uses_left_quaternion_i() {
        let rf = right_mult(Unit::F, 8).unwrap();
        let lhi = left_mult(Unit::I, 4).unwrap();
        for r in 0..4 {
            for c in 0..4 {
                assert_eq!(rf.entry(r, 4 + c), lhi.entry(r, c));
                assert_eq!(rf.entry(4 + r, c), lhi.entry(r, c));
            }
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(right_mult(Unit::E, 4).is_err());
        assert!(right_mult(Unit::I, 6).is_err());
        assert!(block_extension(Unit::F, 64).is_err());
        assert!("x".parse::<Unit>().is_err());
        assert_eq!("h".parse::<Unit>().unwrap(), Unit::H);
    }

    #[test]
    fn unit_is_two_sided() {
        let t = AlgebraTable::octonions();
        for a in 0..8 {
            assert_eq!(t.product(0, a), (a, 1));
            assert_eq!(t.product(a, 0), (a, 1));
        }
    }

    #[test]
    fn grid_has_a_row_per_unit() {
        let g = AlgebraTable::octonions().grid();
        assert_eq!(g.lines().count(), 10);
    }
}
