use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Largest supported ambient dimension (one bit per coordinate).
pub const MAX_AMBIENT: usize = 128;

/// Basis monomial `e^{i_1} ∧ … ∧ e^{i_k}` as a bitmask (bit `i − 1` for index `i`).
///
/// Ordered lexicographically on the increasing index tuple, so iterating a
/// sorted map of blades gives the usual dictionary order of monomials.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Blade(pub(crate) u128);

impl Blade {
    /// From 1-based indices in any order; returns the blade and the sign
    /// of the sorting permutation, or `None` on a repeated index.
    pub fn from_unsorted(indices: &[usize], n: usize) -> Result<Option<(Blade, i8)>> {
        let mut bits = 0u128;
        let mut sign = 1i8;
        for &i in indices {
            if i == 0 || i > n || n > MAX_AMBIENT {
                return Err(Error::InvalidParameter(format!("index {i} outside 1..={n}")));
            }
            let b = 1u128 << (i - 1);
            if bits & b != 0 {
                return Ok(None);
            }
            // inserting i past every larger index already present
            if bits.checked_shr(i as u32).unwrap_or(0).count_ones() % 2 == 1 {
                sign = -sign;
            }
            bits |= b;
        }
        Ok(Some((Blade(bits), sign)))
    }

    /// From strictly increasing 1-based indices.
    pub fn from_indices(indices: &[usize], n: usize) -> Result<Blade> {
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameter(format!(
                "indices {indices:?} are not strictly increasing"
            )));
        }
        Ok(Self::from_unsorted(indices, n)?
            .expect("strictly increasing indices are distinct")
            .0)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Increasing 1-based indices.
    pub fn indices(self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.degree());
        let mut b = self.0;
        while b != 0 {
            out.push(b.trailing_zeros() as usize + 1);
            b &= b - 1;
        }
        out
    }

    /// Largest index, 0 for the empty blade.
    pub fn max_index(self) -> usize {
        128 - self.0.leading_zeros() as usize
    }
}

/// `(−1)^{#{(i, j) : i ∈ a, j ∈ b, i > j}}`, the sign of `e^a ∧ e^b` against
/// `e^{a ∪ b}`; `0` if they overlap.
pub(crate) fn wedge_sign(a: u128, b: u128) -> i8 {
    if a & b != 0 {
        return 0;
    }
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        swaps += if j == 127 { 0 } else { (a >> (j + 1)).count_ones() };
        rest &= rest - 1;
    }
    if swaps.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

impl Ord for Blade {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        let p = diff.trailing_zeros();
        let (has, lacks, ord) = if self.0 >> p & 1 == 1 {
            (self.0, other.0, Ordering::Less)
        } else {
            (other.0, self.0, Ordering::Greater)
        };
        debug_assert!(has >> p & 1 == 1);
        // `lacks` is a proper prefix of `has` when it has nothing at or above p
        if lacks >> p == 0 {
            ord.reverse()
        } else {
            ord
        }
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{:?}", self.indices())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(ix: &[usize]) -> Blade {
        Blade::from_indices(ix, 16).unwrap()
    }

    #[test]
    fn ordering_is_lexicographic() {
        let mut v = [
            b(&[2, 3]),
            b(&[1, 4]),
            b(&[1, 2]),
            b(&[3, 4]),
            b(&[1]),
            b(&[1, 2, 3]),
        ];
        v.sort();
        let ix: Vec<_> = v.iter().map(|x| x.indices()).collect();
        assert_eq!(
            ix,
            vec![
                vec![1],
                vec![1, 2],
                vec![1, 2, 3],
                vec![1, 4],
                vec![2, 3],
                vec![3, 4]
            ]
        );
    }

    #[test]
    fn sorting_sign() {
        assert_eq!(Blade::from_unsorted(&[2, 1], 4).unwrap(), Some((b(&[1, 2]), -1)));
        assert_eq!(
            Blade::from_unsorted(&[3, 1, 2], 4).unwrap(),
            Some((b(&[1, 2, 3]), 1))
        );
        assert_eq!(Blade::from_unsorted(&[1, 1], 4).unwrap(), None);
        assert!(Blade::from_unsorted(&[5], 4).is_err());
    }

    #[test]
    fn wedge_signs() {
        assert_eq!(wedge_sign(b(&[1, 2]).0, b(&[3, 4]).0), 1);
        assert_eq!(wedge_sign(b(&[2]).0, b(&[1]).0), -1);
        assert_eq!(wedge_sign(b(&[1, 3]).0, b(&[2, 4]).0), -1);
        assert_eq!(wedge_sign(b(&[1, 3]).0, b(&[3]).0), 0);
        let top = Blade::from_indices(&[128], 128).unwrap();
        assert_eq!(top.max_index(), 128);
        assert_eq!(wedge_sign(top.0, 1), -1);
    }
}
