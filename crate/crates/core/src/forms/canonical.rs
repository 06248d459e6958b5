//! The structured forms attached to the Clifford systems on ℝ⁸ and ℝ¹⁶.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::kform::KForm;
use super::matrix::{kaehler_form, FormMatrix};
use crate::algebras::{left_mult, AlgebraTable, Unit};
use crate::clifford::{build, Variant};
use crate::error::{Error, Result};
use crate::exactmat::SignedPermMatrix;

/// Index ranges of `C_8 = (S_0, …, S_8)` used for the `ψ` matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PsiFamily {
    /// `1 ≤ α, β ≤ 7`
    A,
    /// `0 ≤ α, β ≤ 7`
    B,
    /// `0 ≤ α, β ≤ 8`
    C,
}

impl PsiFamily {
    pub fn range(self) -> std::ops::RangeInclusive<usize> {
        match self {
            PsiFamily::A => 1..=7,
            PsiFamily::B => 0..=7,
            PsiFamily::C => 0..=8,
        }
    }
}

impl FromStr for PsiFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(PsiFamily::A),
            "B" | "b" => Ok(PsiFamily::B),
            "C" | "c" => Ok(PsiFamily::C),
            _ => Err(Error::InvalidParameter(format!("unknown psi family {s:?}"))),
        }
    }
}

/// The compositions `S_{αβ} = S_α S_β` of `C_8` over the family's range.
pub fn psi_generators(family: PsiFamily) -> Result<Vec<SignedPermMatrix>> {
    let c8 = build(8, Variant::Canonical)?;
    Ok(c8.generators()[family.range()].to_vec())
}

/// `ψ = (ψ_{αβ})`, the Kähler forms of `S_α S_β` on ℝ¹⁶.
pub fn psi_matrix(family: PsiFamily) -> Result<FormMatrix> {
    FormMatrix::of_compositions(&psi_generators(family)?)
}

/// `θ = (θ_{αβ})_{0 ≤ α, β ≤ 4}` for `C_4` on ℝ⁸.
pub fn theta_matrix() -> Result<FormMatrix> {
    FormMatrix::of_compositions(build(4, Variant::Canonical)?.generators())
}

/// `Ω_L = ω²_{L_i} + ω²_{L_j} + ω²_{L_k}` on ℝ⁸ = ℍ², with `L_u` acting
/// diagonally on both quaternionic factors.
pub fn omega_l() -> Result<KForm> {
    let mut acc = KForm::zero(8, 4)?;
    for u in [Unit::I, Unit::J, Unit::K] {
        let l = left_mult(u, 4)?;
        let d = SignedPermMatrix::block2(Some(&l), None, None, Some(&l))?;
        let w = kaehler_form(&d)?;
        acc = acc.add(&w.wedge(&w)?)?;
    }
    Ok(acc)
}

/// The Cayley 4-form on ℝ⁸ = 𝕆: the alternation of `⟨x, y(z̄w)⟩`,
/// divided by the (positive) content of its coefficients.
pub fn cayley_form() -> Result<KForm> {
    let t = AlgebraTable::octonions();
    let conj = |a: usize| if a == 0 { 1i64 } else { -1 };
    // ⟨e_x, e_y(ē_z e_w)⟩
    let trilinear = |x: usize, y: usize, z: usize, w: usize| -> i64 {
        let (zw, s1) = t.product(z, w);
        let (r, s2) = t.product(y, zw);
        if r == x {
            conj(z) * i64::from(s1) * i64::from(s2)
        } else {
            0
        }
    };
    let mut terms = Vec::new();
    for quad in crate::forms::kernel::subsets(8, 4) {
        let mut total = 0i64;
        for_each_permutation(&quad, |p, sign| {
            total += sign * trilinear(p[0], p[1], p[2], p[3]);
        });
        if total != 0 {
            let idx = quad.iter().map(|i| i + 1).collect();
            terms.push((idx, BigRational::from_integer(total.into())));
        }
    }
    let f = KForm::from_terms(8, 4, terms)?;
    let c = f.content();
    if c.is_zero() {
        return Err(Error::Unsupported("the trilinear form alternates to zero".into()));
    }
    Ok(f.scale(&(BigRational::from_integer(1.into()) / c.abs())))
}

/// Calls `f(permutation, sign)` for every permutation of `items`.
fn for_each_permutation(items: &[usize], mut f: impl FnMut(&[usize], i64)) {
    // Heap's algorithm; each swap flips the sign
    let mut a = items.to_vec();
    let n = a.len();
    let mut c = vec![0usize; n];
    let mut sign = 1i64;
    f(&a, sign);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            sign = -sign;
            f(&a, sign);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// The named invariant forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CanonicalName {
    OmegaL,
    Spin7Delta,
    Spin8,
    Spin9,
}

impl CanonicalName {
    pub const ALL: [CanonicalName; 4] = [
        CanonicalName::OmegaL,
        CanonicalName::Spin7Delta,
        CanonicalName::Spin8,
        CanonicalName::Spin9,
    ];
}

impl fmt::Display for CanonicalName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CanonicalName::OmegaL => "omega-l",
            CanonicalName::Spin7Delta => "spin7delta",
            CanonicalName::Spin8 => "spin8",
            CanonicalName::Spin9 => "spin9",
        })
    }
}

impl FromStr for CanonicalName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let key: String = s
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .collect::<String>()
            .to_ascii_lowercase();
        match key.as_str() {
            "omegal" => Ok(CanonicalName::OmegaL),
            "spin7delta" | "spin7" => Ok(CanonicalName::Spin7Delta),
            "spin8" => Ok(CanonicalName::Spin8),
            "spin9" => Ok(CanonicalName::Spin9),
            _ => Err(Error::InvalidParameter(format!("unknown canonical form {s:?}"))),
        }
    }
}

/// `Ω_L`, `(1/6)τ₂(ψ^A)`, `(1/4)τ₂(ψ^B)` or `(1/360)τ₄(ψ^C)`.
pub fn canonical_form(name: CanonicalName) -> Result<KForm> {
    let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    match name {
        CanonicalName::OmegaL => omega_l(),
        CanonicalName::Spin7Delta => Ok(psi_matrix(PsiFamily::A)?.tau(2)?.scale(&q(1, 6))),
        CanonicalName::Spin8 => Ok(psi_matrix(PsiFamily::B)?.tau(2)?.scale(&q(1, 4))),
        CanonicalName::Spin9 => Ok(psi_matrix(PsiFamily::C)?.tau(4)?.scale(&q(1, 360))),
    }
}
