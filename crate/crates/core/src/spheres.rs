//! Hurwitz–Radon systems of orthonormal tangent vector fields on spheres.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clifford::{build, to_representation, Variant};
use crate::error::{Error, Result};
use crate::exactmat::SignedPermMatrix;

/// `N = (2k+1)·2^p·16^q` with `0 ≤ p ≤ 3`, and `σ(N) = 2^p + 8q − 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HurwitzRadon {
    pub n: u64,
    pub sigma: u64,
    pub p: u32,
    pub q: u32,
    pub k: u64,
}

impl HurwitzRadon {
    /// The power-of-two part `2^p·16^q`.
    pub fn n0(&self) -> u64 {
        1u64 << (self.p + 4 * self.q)
    }
}

pub fn hurwitz_radon(n: u64) -> Result<HurwitzRadon> {
    if n == 0 {
        return Err(Error::InvalidParameter("N must be positive".into()));
    }
    let a = n.trailing_zeros();
    let (p, q) = (a % 4, a / 4);
    let odd = n >> a;
    // odd N: no nowhere-vanishing field at all
    let sigma = if a == 0 {
        0
    } else {
        (1u64 << p) + 8 * u64::from(q) - 1
    };
    Ok(HurwitzRadon {
        n,
        sigma,
        p,
        q,
        k: (odd - 1) / 2,
    })
}

/// `σ` anticommuting complex structures `J_α` on `ℝ^N`; `x ↦ J_α x` are the fields.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorFieldSystem {
    n: usize,
    structures: Vec<SignedPermMatrix>,
}

impl VectorFieldSystem {
    pub fn new(n: usize, structures: Vec<SignedPermMatrix>) -> Result<Self> {
        if let Some(j) = structures.iter().find(|j| j.order() != n) {
            return Err(Error::OrderMismatch {
                left: n,
                right: j.order(),
            });
        }
        Ok(Self { n, structures })
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn sigma(&self) -> usize {
        self.structures.len()
    }

    pub fn structures(&self) -> &[SignedPermMatrix] {
        &self.structures
    }

    /// Skew, `J² = −Id`, pairwise anticommuting.
    pub fn check_algebraic(&self) -> bool {
        let s = &self.structures;
        s.iter().all(SignedPermMatrix::is_complex_structure)
            && (0..s.len()).all(|a| (a + 1..s.len()).all(|b| s[a].anticommutes(&s[b])))
    }
}

/// Block-diagonal copies of the representation coming from `C_{σ+1}`.
pub fn max_vector_fields(n: u64) -> Result<VectorFieldSystem> {
    let hr = hurwitz_radon(n)?;
    if n % 2 == 1 {
        return Err(Error::InvalidParameter(format!(
            "N = {n} is odd; there are no fields"
        )));
    }
    let n0 = hr.n0();
    if n0 > 128 {
        return Err(Error::AmbientTooLarge(n0 as usize));
    }
    let m = hr.sigma as usize + 1;
    let rep = to_representation(&build(m, Variant::Canonical)?)?;
    debug_assert_eq!(rep.dim() as u64, n0);
    let copies = SignedPermMatrix::identity((2 * hr.k + 1) as usize);
    let structures = rep.matrices().iter().map(|e| copies.kron(e)).collect();
    VectorFieldSystem::new(n as usize, structures)
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `⟨J_α x, J_β x⟩ = δ_{αβ}` and `⟨J_α x, x⟩ = 0` at every point, exactly.
pub fn verify_pointwise(sys: &VectorFieldSystem, points: &[Vec<BigRational>]) -> Result<bool> {
    for x in points {
        if x.len() != sys.n {
            return Err(Error::ShapeMismatch(format!(
                "point of length {} in R^{}",
                x.len(),
                sys.n
            )));
        }
        if !dot(x, x).is_one() {
            return Err(Error::NonUnitPoint);
        }
    }
    Ok(points.par_iter().all(|x| {
        let fields: Vec<Vec<BigRational>> = sys.structures.iter().map(|j| j.apply(x)).collect();
        fields.iter().enumerate().all(|(a, fa)| {
            dot(fa, x).is_zero()
                && fields[a..].iter().enumerate().all(|(d, fb)| {
                    let v = dot(fa, fb);
                    if d == 0 {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
        })
    }))
}

/// Rational points of `S^{n−1}` by inverse stereographic projection of
/// random rational vectors, reproducible from `seed`.
pub fn random_unit_points(n: usize, count: usize, seed: u64) -> Vec<Vec<BigRational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let y: Vec<BigRational> = (0..n.saturating_sub(1))
                .map(|_| {
                    let num: i64 = rng.gen_range(-9..=9);
                    let den: i64 = rng.gen_range(1..=7);
                    BigRational::new(BigInt::from(num), BigInt::from(den))
                })
                .collect();
            let s: BigRational = y.iter().map(|v| v * v).sum();
            let denom = &s + BigRational::one();
            let mut x: Vec<BigRational> = y
                .iter()
                .map(|v| v * BigRational::from_integer(2.into()) / &denom)
                .collect();
            x.push((&s - BigRational::one()) / &denom);
            x
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hurwitz_radon_numbers() {
        assert_eq!(hurwitz_radon(16).unwrap().sigma, 8);
        assert_eq!(hurwitz_radon(2).unwrap().sigma, 1);
        assert_eq!(hurwitz_radon(7).unwrap().sigma, 0);
        let hr = hurwitz_radon(48).unwrap();
        assert_eq!((hr.p, hr.q, hr.k, hr.sigma), (0, 1, 1, 8));
        assert!(hurwitz_radon(0).is_err());
    }

    #[test]
    fn points_are_on_the_sphere() {
        for x in random_unit_points(5, 10, 7) {
            assert!(dot(&x, &x).is_one());
        }
        assert_eq!(random_unit_points(4, 3, 1), random_unit_points(4, 3, 1));
    }

    #[test]
    fn rejects_large_and_odd() {
        assert!(matches!(max_vector_fields(256), Err(Error::AmbientTooLarge(256))));
        assert!(max_vector_fields(9).is_err());
    }
}
