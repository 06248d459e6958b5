//! Independent dense oracles shared by the integration tests.
#![allow(dead_code)]

use cliffsys::exactmat::SignedPermMatrix;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Dense = Vec<Vec<i64>>;

pub fn dense(p: &SignedPermMatrix) -> Dense {
    let n = p.order();
    (0..n)
        .map(|r| (0..n).map(|c| i64::from(p.entry(r, c))).collect())
        .collect()
}

pub fn from_dense(d: &Dense) -> SignedPermMatrix {
    let n = d.len();
    let images = (0..n)
        .map(|c| {
            let nz: Vec<usize> = (0..n).filter(|&r| d[r][c] != 0).collect();
            assert_eq!(nz.len(), 1, "column {c} is not a signed unit vector");
            (nz[0], d[nz[0]][c] as i8)
        })
        .collect();
    SignedPermMatrix::from_images(images).expect("signed permutation")
}

pub fn identity(n: usize) -> Dense {
    (0..n)
        .map(|r| (0..n).map(|c| i64::from(r == c)).collect())
        .collect()
}

pub fn zeros(n: usize) -> Dense {
    vec![vec![0; n]; n]
}

pub fn neg(a: &Dense) -> Dense {
    a.iter().map(|r| r.iter().map(|v| -v).collect()).collect()
}

pub fn mul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    let mut out = zeros(n);
    for i in 0..n {
        for k in 0..n {
            if a[i][k] != 0 {
                for j in 0..n {
                    out[i][j] += a[i][k] * b[k][j];
                }
            }
        }
    }
    out
}

pub fn transpose(a: &Dense) -> Dense {
    let n = a.len();
    (0..n).map(|r| (0..n).map(|c| a[c][r]).collect()).collect()
}

/// Assembles a square block matrix; `None` blocks are zero.
pub fn blocks(grid: &[Vec<Option<Dense>>]) -> Dense {
    let k = grid.len();
    let b = grid
        .iter()
        .flatten()
        .flatten()
        .map(|m| m.len())
        .next()
        .expect("at least one nonzero block");
    let mut out = zeros(k * b);
    for (bi, row) in grid.iter().enumerate() {
        for (bj, blk) in row.iter().enumerate() {
            if let Some(m) = blk {
                for r in 0..b {
                    for c in 0..b {
                        out[bi * b + r][bj * b + c] = m[r][c];
                    }
                }
            }
        }
    }
    out
}

/// `[[0, −X], [X, 0]]`
pub fn jmat(x: &Dense) -> Dense {
    blocks(&[vec![None, Some(neg(x))], vec![Some(x.clone()), None]])
}

/// `[[0, X], [X, 0]]`
pub fn offdiag(x: &Dense) -> Dense {
    blocks(&[vec![None, Some(x.clone())], vec![Some(x.clone()), None]])
}

/// `diag(X, −X)`
pub fn diag_pm(x: &Dense) -> Dense {
    blocks(&[vec![Some(x.clone()), None], vec![None, Some(neg(x))]])
}

pub fn lit(rows: &[&[i64]]) -> Dense {
    rows.iter().map(|r| r.to_vec()).collect()
}

/// Rank over ℚ by plain Gauss–Jordan elimination on rationals.
pub fn naive_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = BigRational::one() / rows[rank][c].clone();
        let pivot: Vec<BigRational> = rows[rank].iter().map(|v| v * &inv).collect();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rank
}

pub fn int_rows(rows: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    rows.iter()
        .map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect())
        .collect()
}

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}
