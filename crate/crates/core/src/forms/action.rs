use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::kernel;
use super::kform::KForm;
use crate::error::{Error, Result};
use crate::exactmat::{RationalMatrix, SignedPermMatrix};

/// A skew matrix stored by rows, ready to act on forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieOperator {
    n: usize,
    rows: Vec<Vec<(usize, BigRational)>>,
}

impl LieOperator {
    pub fn from_signed_perm(x: &SignedPermMatrix) -> Result<Self> {
        if !x.is_skew() {
            return Err(Error::ShapeMismatch("operator is not skew".into()));
        }
        let xt = x.transpose();
        let rows = (0..x.order())
            .map(|i| {
                // X_{i c} ≠ 0 where X e_c = ±e_i
                let (c, s) = xt.image(i);
                vec![(c, BigRational::from_integer(s.into()))]
            })
            .collect();
        Ok(Self { n: x.order(), rows })
    }

    pub fn from_dense(x: &RationalMatrix) -> Result<Self> {
        if x.rows() != x.cols() {
            return Err(Error::ShapeMismatch("operator is not square".into()));
        }
        let n = x.rows();
        let mut rows = vec![Vec::new(); n];
        for (i, row) in rows.iter_mut().enumerate() {
            for j in 0..n {
                let v = x.get(i, j);
                if *v != -x.get(j, i).clone() {
                    return Err(Error::ShapeMismatch("operator is not skew".into()));
                }
                if !v.is_zero() {
                    row.push((j, v.clone()));
                }
            }
        }
        Ok(Self { n, rows })
    }

    /// `E_{ij} − E_{ji}` (0-based), the standard basis of `so(n)`.
    pub fn elementary(n: usize, i: usize, j: usize) -> Result<Self> {
        if i >= n || j >= n || i == j {
            return Err(Error::InvalidParameter(format!(
                "no elementary generator ({i}, {j})"
            )));
        }
        let mut rows = vec![Vec::new(); n];
        rows[i].push((j, BigRational::one()));
        rows[j].push((i, -BigRational::one()));
        Ok(Self { n, rows })
    }

    pub fn order(&self) -> usize {
        self.n
    }
}

/// `(ρ(X)a)(v_1, …, v_k) = −Σ_i a(v_1, …, X v_i, …, v_k)`.
pub fn lie_action(x: &LieOperator, a: &KForm) -> Result<KForm> {
    if x.n != a.ambient() {
        return Err(Error::AmbientMismatch {
            left: x.n,
            right: a.ambient(),
        });
    }
    let lx = x
        .rows
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
    let la = a.blades().fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
    let rows: Option<Vec<Vec<(usize, i128)>>> = x
        .rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|(j, v)| {
                    (v * BigRational::from_integer(lx.clone()))
                        .to_integer()
                        .to_i128()
                        .map(|v| (*j, v))
                })
                .collect()
        })
        .collect();
    let terms = a.to_int_terms(&la);
    let (Some(rows), Some(terms)) = (rows, terms) else {
        return Err(Error::Unsupported(
            "coefficients too large for the integer kernel".into(),
        ));
    };
    let raw = KForm::from_int_terms(a.ambient(), a.degree(), kernel::lie_action(&rows, &terms)?);
    let scale = lx * la;
    if scale.is_one() {
        Ok(raw)
    } else {
        Ok(raw.scale(&BigRational::new(BigInt::one(), scale)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotation_preserves_area_form() {
        let n01 = SignedPermMatrix::from_images(vec![(1, 1), (0, -1)]).unwrap();
        let x = LieOperator::from_signed_perm(&n01).unwrap();
        let area = KForm::parse_text(2, 2, "s12").unwrap();
        assert!(lie_action(&x, &area).unwrap().is_zero());
    }

    #[test]
    fn elementary_generator_on_one_form() {
        // X = E_12 − E_21; ρ(X)e^1 = −e^2, ρ(X)e^2 = e^1
        let x = LieOperator::elementary(3, 0, 1).unwrap();
        let e1 = KForm::parse_text(3, 1, "s1").unwrap();
        assert_eq!(
            lie_action(&x, &e1).unwrap(),
            KForm::parse_text(3, 1, "-s2").unwrap()
        );
        let e2 = KForm::parse_text(3, 1, "s2").unwrap();
        assert_eq!(
            lie_action(&x, &e2).unwrap(),
            KForm::parse_text(3, 1, "s1").unwrap()
        );
    }

    #[test]
    fn rejects_non_skew() {
        assert!(LieOperator::from_signed_perm(&SignedPermMatrix::identity(3)).is_err());
        let d = RationalMatrix::from_i64_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert!(LieOperator::from_dense(&d).is_err());
    }
}
