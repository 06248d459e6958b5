use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use super::kernel::IntFormMatrix;
use super::kform::KForm;
use crate::error::{Error, Result};
use crate::exactmat::SignedPermMatrix;

/// Kähler form of a complex structure: the coefficient of `e^a ∧ e^b`
/// (`a < b`) is the entry `J_{ab}`.
pub fn kaehler_form(j: &SignedPermMatrix) -> Result<KForm> {
    if !j.is_complex_structure() {
        return Err(Error::NotComplexStructure);
    }
    let n = j.order();
    let terms = j
        .images()
        .enumerate()
        .filter(|&(col, (row, _))| row < col)
        .map(|(col, (row, s))| (vec![row + 1, col + 1], BigRational::from_integer(s.into())));
    KForm::from_terms(n, 2, terms)
}

/// Skew square array of 2-forms with a common ambient dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormMatrix {
    size: usize,
    n: usize,
    /// `upper[a][b − a − 1] = ψ_{ab}` for `a < b`.
    upper: Vec<Vec<KForm>>,
}

impl FormMatrix {
    /// Builds `ψ` from its entries above the diagonal.
    pub fn from_fn(size: usize, n: usize, mut f: impl FnMut(usize, usize) -> Result<KForm>) -> Result<Self> {
        let mut upper = Vec::with_capacity(size);
        for a in 0..size {
            let mut row = Vec::with_capacity(size - a - 1);
            for b in a + 1..size {
                let e = f(a, b)?;
                if e.ambient() != n {
                    return Err(Error::AmbientMismatch {
                        left: n,
                        right: e.ambient(),
                    });
                }
                if e.degree() != 2 {
                    return Err(Error::InvalidParameter(format!(
                        "entry ({a}, {b}) has degree {}, expected 2",
                        e.degree()
                    )));
                }
                row.push(e);
            }
            upper.push(row);
        }
        Ok(Self { size, n, upper })
    }

    /// `ψ_{αβ}` = Kähler form of `P_α P_β` for a family of mutually
    /// anticommuting involutions (or any family with skew pairwise products).
    pub fn of_compositions(mats: &[SignedPermMatrix]) -> Result<Self> {
        let n = mats
            .first()
            .ok_or_else(|| Error::InvalidParameter("empty family".into()))?
            .order();
        Self::from_fn(mats.len(), n, |a, b| kaehler_form(&mats[a].mul(&mats[b])?))
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    /// `ψ_{ab}`, with `ψ_{ba} = −ψ_{ab}` and zero diagonal.
    pub fn get(&self, a: usize, b: usize) -> KForm {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => self.upper[a][b - a - 1].clone(),
            std::cmp::Ordering::Greater => self.upper[b][a - b - 1].neg(),
            std::cmp::Ordering::Equal => KForm::zero(self.n, 2).expect("valid ambient"),
        }
    }

    /// Entries above the diagonal, row by row.
    pub fn upper_entries(&self) -> impl Iterator<Item = (usize, usize, &KForm)> {
        self.upper
            .iter()
            .enumerate()
            .flat_map(|(a, row)| row.iter().enumerate().map(move |(d, f)| (a, a + d + 1, f)))
    }

    /// Principal submatrix on `idx`.
    pub fn principal(&self, idx: &[usize]) -> Result<Self> {
        if let Some(&bad) = idx.iter().find(|&&i| i >= self.size) {
            return Err(Error::InvalidParameter(format!("index {bad} outside the matrix")));
        }
        Self::from_fn(idx.len(), self.n, |a, b| Ok(self.get(idx[a], idx[b])))
    }

    /// `τ_k`: the degree-`2k` coefficient of the characteristic polynomial,
    /// i.e. the sum of the `k × k` principal minors, computed as the sum of
    /// squared Pfaffians.
    pub fn tau(&self, k: usize) -> Result<KForm> {
        if k % 2 == 1 {
            return Err(Error::OddTauDegree(k));
        }
        if k > self.size {
            return Err(Error::InvalidParameter(format!(
                "tau_{k} of a {0}x{0} matrix",
                self.size
            )));
        }
        if 2 * k > self.n {
            return KForm::zero(self.n, 2 * k);
        }
        // clear denominators uniformly: τ_k(Lψ) = L^k τ_k(ψ)
        let l = self
            .upper_entries()
            .flat_map(|(_, _, f)| f.blades().map(|(_, c)| c.denom().clone()).collect::<Vec<_>>())
            .fold(BigInt::one(), |acc, d| acc.lcm(&d));
        let upper = self
            .upper
            .iter()
            .map(|row| {
                row.iter()
                    .map(|f| {
                        f.to_int_terms(&l).ok_or_else(|| {
                            Error::Unsupported("form coefficients too large for the integer kernel".into())
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let kernel = IntFormMatrix {
            size: self.size,
            upper,
        };
        let raw = KForm::from_int_terms(self.n, 2 * k, kernel.tau(k)?);
        if l.is_one() {
            return Ok(raw);
        }
        let lk = num_traits::pow(BigRational::from_integer(l), k);
        Ok(raw.scale(&(BigRational::one() / lk)))
    }

    /// `Σ_{α<β} ψ_{αβ} ∧ ψ_{αβ}` by plain wedge products (used for
    /// cross-checking `τ_2`).
    pub fn sum_of_squares(&self) -> Result<KForm> {
        self.upper_entries()
            .try_fold(KForm::zero(self.n, 4)?, |acc, (_, _, f)| acc.add(&f.wedge(f)?))
    }

    pub fn is_zero(&self) -> bool {
        self.upper_entries().all(|(_, _, f)| f.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n01() -> SignedPermMatrix {
        SignedPermMatrix::from_images(vec![(1, 1), (0, -1)]).unwrap()
    }

    #[test]
    fn kaehler_of_rotation() {
        let w = kaehler_form(&n01()).unwrap();
        assert_eq!(w.to_text(), "-𝚜12");
        assert!(matches!(
            kaehler_form(&SignedPermMatrix::identity(2)),
            Err(Error::NotComplexStructure)
        ));
    }

    #[test]
    fn tau_of_two_by_two() {
        let phi = KForm::parse_text(4, 2, "s12 + s34").unwrap();
        let m = FormMatrix::from_fn(2, 4, |_, _| Ok(phi.clone())).unwrap();
        assert_eq!(m.tau(2).unwrap(), phi.wedge(&phi).unwrap());
        assert!(matches!(m.tau(1), Err(Error::OddTauDegree(1))));
        assert_eq!(m.get(1, 0), phi.neg());
        assert!(m.get(1, 1).is_zero());
    }

    #[test]
    fn tau_rescales_fractions() {
        let phi = KForm::parse_text(4, 2, "(1/2)s12 + (1/3)s34").unwrap();
        let m = FormMatrix::from_fn(2, 4, |_, _| Ok(phi.clone())).unwrap();
        assert_eq!(m.tau(2).unwrap(), phi.wedge(&phi).unwrap());
    }
}
