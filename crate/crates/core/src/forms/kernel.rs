//! Integer fast paths: forms as hash maps `blade bits → i128`.

use rayon::prelude::*;
use rustc_hash::FxHashMap;

use super::blade::wedge_sign;
use crate::error::{Error, Result};

pub(crate) type IntTerms = FxHashMap<u128, i128>;

fn overflow() -> Error {
    Error::Unsupported("integer coefficient overflow in form kernel".into())
}

pub(crate) fn add_into(acc: &mut IntTerms, key: u128, v: i128) -> Result<()> {
    let slot = acc.entry(key).or_insert(0);
    *slot = slot.checked_add(v).ok_or_else(overflow)?;
    if *slot == 0 {
        acc.remove(&key);
    }
    Ok(())
}

pub(crate) fn merge(mut a: IntTerms, b: IntTerms) -> Result<IntTerms> {
    let (mut big, small) = if a.len() >= b.len() {
        (std::mem::take(&mut a), b)
    } else {
        (b, a)
    };
    for (k, v) in small {
        add_into(&mut big, k, v)?;
    }
    Ok(big)
}

/// `Σ_s Σ_t c_s d_t e^s ∧ e^t` over term lists.
pub(crate) fn wedge_lists(
    a: &[(u128, i128)],
    b: &[(u128, i128)],
    acc: &mut IntTerms,
    scale: i128,
) -> Result<()> {
    for &(ka, va) in a {
        for &(kb, vb) in b {
            let s = wedge_sign(ka, kb);
            if s == 0 {
                continue;
            }
            let v = va
                .checked_mul(vb)
                .and_then(|x| x.checked_mul(scale * i128::from(s)))
                .ok_or_else(overflow)?;
            add_into(acc, ka | kb, v)?;
        }
    }
    Ok(())
}

/// Square of an even-degree form: `2 Σ_{s<t} c_s c_t e^s ∧ e^t`.
pub(crate) fn square_even(terms: &[(u128, i128)]) -> Result<IntTerms> {
    let mut acc = IntTerms::default();
    for (i, &(ka, va)) in terms.iter().enumerate() {
        for &(kb, vb) in &terms[i + 1..] {
            let s = wedge_sign(ka, kb);
            if s == 0 {
                continue;
            }
            let v = va
                .checked_mul(vb)
                .and_then(|x| x.checked_mul(2 * i128::from(s)))
                .ok_or_else(overflow)?;
            add_into(&mut acc, ka | kb, v)?;
        }
    }
    Ok(acc)
}

/// Upper-triangular array of 2-forms, `upper[a][b - a - 1] = ψ_{ab}`.
pub(crate) struct IntFormMatrix {
    pub size: usize,
    pub upper: Vec<Vec<Vec<(u128, i128)>>>,
}

impl IntFormMatrix {
    fn entry(&self, a: usize, b: usize) -> &[(u128, i128)] {
        debug_assert!(a < b);
        &self.upper[a][b - a - 1]
    }

    /// Pfaffian of the principal submatrix on `idx` (even length), expanded
    /// along the first row.
    pub fn pfaffian(&self, idx: &[usize]) -> Result<IntTerms> {
        match idx.len() {
            0 => {
                let mut one = IntTerms::default();
                one.insert(0, 1);
                Ok(one)
            }
            2 => Ok(self.entry(idx[0], idx[1]).iter().copied().collect()),
            _ => {
                let mut acc = IntTerms::default();
                for j in 1..idx.len() {
                    let a = self.entry(idx[0], idx[j]);
                    if a.is_empty() {
                        continue;
                    }
                    let rest: Vec<usize> = idx[1..]
                        .iter()
                        .enumerate()
                        .filter(|&(p, _)| p + 1 != j)
                        .map(|(_, &x)| x)
                        .collect();
                    let sub: Vec<_> = self.pfaffian(&rest)?.into_iter().collect();
                    // (−1)^{j+1} with 0-based j equals (−1)^{j'} with 1-based j' = j + 1
                    let sign = if j % 2 == 1 { 1 } else { -1 };
                    wedge_lists(a, &sub, &mut acc, sign)?;
                }
                Ok(acc)
            }
        }
    }

    /// `τ_k = Σ_{|S| = k} Pf(ψ_S)²`, principal subsets evaluated in parallel.
    pub fn tau(&self, k: usize) -> Result<IntTerms> {
        let subsets = subsets(self.size, k);
        subsets
            .par_iter()
            .try_fold(IntTerms::default, |mut acc, s| {
                let pf: Vec<_> = self.pfaffian(s)?.into_iter().collect();
                for (key, v) in square_even(&pf)? {
                    add_into(&mut acc, key, v)?;
                }
                Ok(acc)
            })
            .try_reduce(IntTerms::default, merge)
    }
}

/// All increasing `k`-subsets of `0..n`, lexicographically.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Sign of replacing index bit `i` by bit `j` inside blade `b` (`i ∈ b`, `j ∉ b`).
pub(crate) fn replace_sign(b: u128, i: u32, j: u32) -> i8 {
    let (lo, hi) = if i < j { (i, j) } else { (j, i) };
    // bits strictly between lo and hi
    let mask = if hi - lo <= 1 {
        0
    } else {
        ((1u128 << (hi - lo - 1)) - 1) << (lo + 1)
    };
    if (b & mask).count_ones().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `ρ(X)a` for `X` given row-wise as sparse integer entries.
pub(crate) fn lie_action(rows: &[Vec<(usize, i128)>], terms: &[(u128, i128)]) -> Result<IntTerms> {
    terms
        .par_iter()
        .try_fold(IntTerms::default, |mut acc, &(key, c)| {
            let mut rest = key;
            while rest != 0 {
                let i = rest.trailing_zeros();
                rest &= rest - 1;
                for &(j, x) in &rows[i as usize] {
                    let j = j as u32;
                    let cleared = key & !(1u128 << i);
                    if cleared >> j & 1 == 1 {
                        continue;
                    }
                    let s = replace_sign(key, i, j);
                    let v = c
                        .checked_mul(x)
                        .and_then(|v| v.checked_mul(-i128::from(s)))
                        .ok_or_else(overflow)?;
                    add_into(&mut acc, cleared | 1u128 << j, v)?;
                }
            }
            Ok(acc)
        })
        .try_reduce(IntTerms::default, merge)
}
