use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;

/// Sparse integer row: strictly increasing column indices, no zero entries.
pub type SparseRow = Vec<(u32, BigInt)>;

/// Incremental fraction-free row echelon form over ℤ (equivalently ℚ).
///
/// Rows are kept primitive (content 1, positive leading entry), which keeps
/// coefficient growth in check for the large but very sparse constraint
/// systems coming from signed-permutation generators.
#[derive(Debug, Clone, Default)]
pub struct SparseEchelon {
    rows: Vec<SparseRow>,
    by_lead: FxHashMap<u32, usize>,
}

impl SparseEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    /// Builds a sparse row from unsorted `(col, value)` pairs, summing duplicates.
    pub fn row_from_pairs(pairs: impl IntoIterator<Item = (u32, i64)>) -> SparseRow {
        let mut acc: Vec<(u32, i64)> = pairs.into_iter().collect();
        acc.sort_unstable_by_key(|&(c, _)| c);
        let mut out: SparseRow = Vec::with_capacity(acc.len());
        for (c, v) in acc {
            match out.last_mut() {
                Some((lc, lv)) if *lc == c => *lv += v,
                _ => out.push((c, BigInt::from(v))),
            }
        }
        out.retain(|(_, v)| !v.is_zero());
        out
    }

    /// Reduces `row` against the stored pivots until its leading column is free.
    fn reduce(&self, mut row: SparseRow) -> SparseRow {
        while let Some((lead, _)) = row.first() {
            let Some(&pi) = self.by_lead.get(lead) else { break };
            row = eliminate(&row, &self.rows[pi]);
        }
        row
    }

    /// True iff `row` is in the row space.
    pub fn contains(&self, row: SparseRow) -> bool {
        self.reduce(row).is_empty()
    }

    /// Adds `row`; returns whether it increased the rank.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let row = make_primitive(self.reduce(row));
        let Some(&(lead, _)) = row.first() else {
            return false;
        };
        self.by_lead.insert(lead, self.rows.len());
        self.rows.push(row);
        true
    }
}

/// `p_c·r − r_c·p` where `c` is the leading column of `p`, made primitive.
fn eliminate(r: &SparseRow, p: &SparseRow) -> SparseRow {
    let pc = &p[0].1;
    let rc = &r[0].1;
    let g = pc.gcd(rc);
    let (fr, fp) = (pc / &g, rc / &g);
    let mut out = Vec::with_capacity(r.len() + p.len());
    let (mut i, mut j) = (1, 1);
    while i < r.len() || j < p.len() {
        let ci = r.get(i).map(|e| e.0);
        let cj = p.get(j).map(|e| e.0);
        let (c, v) = match (ci, cj) {
            (Some(a), Some(b)) if a == b => {
                let v = &fr * &r[i].1 - &fp * &p[j].1;
                i += 1;
                j += 1;
                (a, v)
            }
            (Some(a), Some(b)) if a < b => {
                i += 1;
                (a, &fr * &r[i - 1].1)
            }
            (Some(a), None) => {
                i += 1;
                (a, &fr * &r[i - 1].1)
            }
            (_, Some(b)) => {
                j += 1;
                (b, -(&fp * &p[j - 1].1))
            }
            (None, None) => unreachable!(),
        };
        if !v.is_zero() {
            out.push((c, v));
        }
    }
    make_primitive(out)
}

fn make_primitive(mut row: SparseRow) -> SparseRow {
    let Some((_, lead)) = row.first() else {
        return row;
    };
    let mut g = row.iter().fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
    if lead.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for (_, v) in &mut row {
            *v = &*v / &g;
        }
    }
    row
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn detects_dependence() {
        let mut e = SparseEchelon::new();
        assert!(e.insert(SparseEchelon::row_from_pairs([(0, 1), (2, 3)])));
        assert!(e.insert(SparseEchelon::row_from_pairs([(0, 2), (1, 1)])));
        // (0:3, 1:1, 2:3) = first + second
        assert!(e.contains(SparseEchelon::row_from_pairs([(0, 3), (1, 1), (2, 3)])));
        assert!(!e.insert(SparseEchelon::row_from_pairs([(0, 3), (1, 1), (2, 3)])));
        assert!(e.insert(SparseEchelon::row_from_pairs([(2, 5)])));
        assert_eq!(e.rank(), 3);
    }

    #[test]
    fn duplicates_are_summed_and_zero_rows_ignored() {
        let r = SparseEchelon::row_from_pairs([(4, 1), (4, -1)]);
        assert!(r.is_empty());
        let mut e = SparseEchelon::new();
        assert!(!e.insert(r));
    }

    #[test]
    fn rows_stay_primitive() {
        let mut e = SparseEchelon::new();
        e.insert(SparseEchelon::row_from_pairs([(1, -6), (3, 4)]));
        assert_eq!(e.rows()[0], vec![(1, BigInt::from(3)), (3, BigInt::from(-2))]);
    }
}
