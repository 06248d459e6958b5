mod common;

use cliffsys::algebras::{left_mult, right_mult, Unit};
use cliffsys::clifford::{build, Variant};
use cliffsys::exactmat::{RationalMatrix, SignedPermMatrix};
use cliffsys::forms::{
    canonical_form, cayley_form, kaehler_form, lie_action, omega_l, psi_generators, psi_matrix, theta_matrix,
    CanonicalName, FormMatrix, KForm, LieOperator, PsiFamily,
};
use cliffsys::liealg::stabilizer_dim;
use cliffsys::selftest::{
    PSI_A_IDENTITY_A, PSI_A_IDENTITY_B, PSI_A_IDENTITY_B_PRIMED, PSI_A_IDENTITY_C,
    QUARTER_TAU2_PSI_B_REFERENCE, THETA_REFERENCE,
};
use common::q;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn text(n: usize, k: usize, s: &str) -> KForm {
    KForm::parse_text(n, k, s).unwrap()
}

#[test]
fn wedge_of_monomials() {
    let a = text(4, 2, "s12");
    let b = text(4, 2, "s34");
    assert_eq!(a.wedge(&b).unwrap(), text(4, 4, "s1234"));
    assert!(a.wedge(&a).unwrap().is_zero());
    assert!(a.wedge(&text(5, 1, "s5")).is_err());
}

#[test]
fn hodge_star_examples() {
    assert_eq!(text(8, 4, "s1234").hodge_star(), text(8, 4, "s5678"));
    // e^I ∧ ⋆e^I = vol
    let vol = text(8, 8, "s12345678");
    for f in ["s13", "s2468", "s157"] {
        let k = f.len() - 1;
        let a = text(8, k, f);
        assert_eq!(a.wedge(&a.hodge_star()).unwrap(), vol);
    }
}

#[test]
fn omega_l_is_sum_of_squares_of_left_kaehler_forms() {
    let mut acc = KForm::zero(8, 4).unwrap();
    for u in [Unit::I, Unit::J, Unit::K] {
        let l = left_mult(u, 4).unwrap();
        let d = SignedPermMatrix::block2(Some(&l), None, None, Some(&l)).unwrap();
        let w = kaehler_form(&d).unwrap();
        acc = acc.add(&w.wedge(&w).unwrap()).unwrap();
    }
    assert_eq!(omega_l().unwrap(), acc);
}

#[test]
fn kaehler_form_examples() {
    // Q_01 = R_i on ℝ⁸
    let ri = right_mult(Unit::I, 8).unwrap();
    assert_eq!(kaehler_form(&ri).unwrap(), text(8, 2, "-s12+s34+s56-s78"));
    let n01 = SignedPermMatrix::from_images(vec![(1, 1), (0, -1)]).unwrap();
    let w = kaehler_form(&n01).unwrap();
    assert_eq!(w.len(), 1);
    assert_eq!(w.coefficient(&[1, 2]).abs(), BigRational::one());
    // S_0 S_8 couples every a with a′
    let c8 = build(8, Variant::Canonical).unwrap();
    let w08 = kaehler_form(&c8.composition(0, 8)).unwrap();
    assert_eq!(w08.len(), 8);
    for a in 1..=8 {
        assert_eq!(w08.coefficient(&[a, a + 8]).abs(), BigRational::one());
    }
    assert!(kaehler_form(&c8.generators()[0]).is_err());
}

#[test]
fn theta_forms_match_the_printed_list() {
    let theta = theta_matrix().unwrap();
    for ((a, b), s) in THETA_REFERENCE {
        assert_eq!(theta.get(a, b), text(8, 2, s), "theta_{a}{b}");
    }
    let t2 = theta.tau(2).unwrap();
    assert_eq!(t2.coefficient(&[1, 2, 3, 4]), q(-12, 1));
    assert_eq!(t2, omega_l().unwrap().scale(&q(-2, 1)));
}

#[test]
fn tau_of_a_single_entry() {
    let phi = text(6, 2, "s12+2s34-s56");
    let m = FormMatrix::from_fn(2, 6, |_, _| Ok(phi.clone())).unwrap();
    assert_eq!(m.tau(2).unwrap(), phi.wedge(&phi).unwrap());
    assert!(m.tau(1).is_err());
}

#[test]
fn psi_b_matches_the_printed_expansion() {
    let reference = text(16, 4, QUARTER_TAU2_PSI_B_REFERENCE);
    assert_eq!(reference.len(), 112);
    let quarter = psi_matrix(PsiFamily::B).unwrap().tau(2).unwrap().scale(&q(1, 4));
    assert_eq!(quarter, reference);
    assert_eq!(canonical_form(CanonicalName::Spin8).unwrap(), reference);
    assert!(reference.is_integral() && reference.content().is_one());
}

fn identity_pieces() -> (KForm, KForm, KForm, KForm) {
    let b = text(16, 2, PSI_A_IDENTITY_B);
    let bp = text(16, 2, PSI_A_IDENTITY_B_PRIMED);
    (
        text(16, 4, PSI_A_IDENTITY_A),
        b.wedge(&b).unwrap(),
        bp.wedge(&bp).unwrap(),
        text(16, 4, PSI_A_IDENTITY_C),
    )
}

#[test]
fn psi_a_satisfies_the_corrected_identity() {
    // τ₂(ψ^A) = ½τ₂(ψ^B) − 2[Σ_a 𝚜aa′]² + 6A − 3B² − 3B′² − 6C
    let tau_a = psi_matrix(PsiFamily::A).unwrap().tau(2).unwrap();
    let tau_b = psi_matrix(PsiFamily::B).unwrap().tau(2).unwrap();
    let (a, b2, bp2, c) = identity_pieces();
    let d = text(16, 2, "s11'+s22'+s33'+s44'+s55'+s66'+s77'+s88'");
    let rhs = tau_b
        .scale(&q(1, 2))
        .sub(&d.wedge(&d).unwrap().scale(&q(2, 1)))
        .unwrap()
        .add(&a.scale(&q(6, 1)))
        .unwrap()
        .sub(&b2.scale(&q(3, 1)))
        .unwrap()
        .sub(&bp2.scale(&q(3, 1)))
        .unwrap()
        .sub(&c.scale(&q(6, 1)))
        .unwrap();
    assert_eq!(tau_a, rhs);
}

#[test]
fn printed_psi_a_identity_differs_only_on_mixed_monomials() {
    let tau_a = psi_matrix(PsiFamily::A).unwrap().tau(2).unwrap();
    let tau_b = psi_matrix(PsiFamily::B).unwrap().tau(2).unwrap();
    let printed = cliffsys::selftest::printed_psi_a_identity(&tau_b).unwrap();
    let diff = tau_a.sub(&printed).unwrap();
    assert_eq!(diff.len(), 84);
    for (idx, _) in diff.terms() {
        let low = idx.iter().filter(|&&i| i <= 8).count();
        assert_eq!(low, 2, "{idx:?}");
    }
}

/// `τ₄` by expanding every principal 4×4 Pfaffian with plain wedges.
fn tau4_oracle(m: &FormMatrix) -> KForm {
    let n = m.size();
    let mut acc = KForm::zero(m.ambient(), 8).unwrap();
    let mut minors = 0;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let w = |x: usize, y: usize, z: usize, t: usize| m.get(x, y).wedge(&m.get(z, t)).unwrap();
                    let pf = w(a, b, c, d)
                        .sub(&w(a, c, b, d))
                        .unwrap()
                        .add(&w(a, d, b, c))
                        .unwrap();
                    acc = acc.add(&pf.wedge(&pf).unwrap()).unwrap();
                    minors += 1;
                }
            }
        }
    }
    assert_eq!(minors, n * (n - 1) * (n - 2) * (n - 3) / 24);
    acc
}

#[test]
fn spin9_form_matches_the_minor_expansion() {
    let psi = psi_matrix(PsiFamily::C).unwrap();
    let oracle = tau4_oracle(&psi);
    let fast = psi.tau(4).unwrap();
    assert_eq!(fast, oracle);
    let phi = canonical_form(CanonicalName::Spin9).unwrap();
    assert_eq!(phi, oracle.scale(&q(1, 360)));
    assert_eq!(phi.len(), oracle.len());
    assert!(phi.is_integral() && phi.content().is_one());
    assert!(psi.tau(2).unwrap().is_zero());
}

#[test]
fn spin9_form_is_invariant() {
    let phi = canonical_form(CanonicalName::Spin9).unwrap();
    let g = psi_generators(PsiFamily::C).unwrap();
    for a in 0..9 {
        for b in a + 1..9 {
            let x = LieOperator::from_signed_perm(&g[a].mul(&g[b]).unwrap()).unwrap();
            assert!(lie_action(&x, &phi).unwrap().is_zero(), "S_{a}{b}");
        }
    }
    // but not under a generic rotation
    let x = LieOperator::elementary(16, 0, 1).unwrap();
    assert!(!lie_action(&x, &phi).unwrap().is_zero());
}

#[test]
fn area_form_is_rotation_invariant() {
    let n01 = SignedPermMatrix::from_images(vec![(1, 1), (0, -1)]).unwrap();
    let x = LieOperator::from_signed_perm(&n01).unwrap();
    assert!(lie_action(&x, &text(2, 2, "s12")).unwrap().is_zero());
    assert!(LieOperator::from_signed_perm(&SignedPermMatrix::identity(2)).is_err());
}

#[test]
fn cayley_form_properties() {
    let phi = cayley_form().unwrap();
    assert_eq!(phi.len(), 14);
    assert!(phi.content().is_one());
    // self-dual and Φ ∧ Φ = 14 vol
    assert_eq!(phi.hodge_star(), phi);
    assert_eq!(phi.wedge(&phi).unwrap(), text(8, 8, "14s12345678"));
    // stabilized by spin(7), of dimension 21
    assert_eq!(stabilizer_dim(&phi).unwrap(), 21);
}

#[test]
fn spin7_form_restricts_to_cayley_on_both_summands() {
    let seven = canonical_form(CanonicalName::Spin7Delta).unwrap();
    let cayley = cayley_form().unwrap();
    let lo: Vec<usize> = (1..=8).collect();
    let hi: Vec<usize> = (9..=16).collect();
    assert_eq!(seven.restrict(&lo).unwrap(), cayley);
    assert_eq!(seven.restrict(&hi).unwrap(), cayley);
}

#[test]
fn stabilizer_of_omega_l() {
    // sp(2) ⊕ sp(1)
    assert_eq!(stabilizer_dim(&omega_l().unwrap()).unwrap(), 13);
}

#[test]
fn text_and_json_round_trips() {
    let phi = canonical_form(CanonicalName::Spin8).unwrap();
    assert_eq!(text(16, 4, &phi.to_text()), phi);
    let doc = serde_json::to_string(&phi.to_json()).unwrap();
    assert_eq!(
        KForm::from_json(&serde_json::from_str(&doc).unwrap()).unwrap(),
        phi
    );
    let big = KForm::monomial(20, &[1, 20], q(-3, 2)).unwrap();
    assert_eq!(text(20, 2, &big.to_text()), big);
}

fn two_form(n: usize) -> impl Strategy<Value = KForm> {
    proptest::collection::vec(-2i64..=2, n * (n - 1) / 2).prop_map(move |cs| {
        let mut terms = Vec::new();
        let mut it = cs.into_iter();
        for i in 1..=n {
            for j in i + 1..=n {
                let c = it.next().unwrap();
                if c != 0 {
                    terms.push((vec![i, j], q(c, 1)));
                }
            }
        }
        KForm::from_terms(n, 2, terms).unwrap()
    })
}

fn form(n: usize, k: usize) -> impl Strategy<Value = KForm> {
    proptest::collection::vec(
        (
            proptest::sample::subsequence((1..=n).collect::<Vec<_>>(), k),
            -3i64..=3,
        ),
        0..6,
    )
    .prop_map(move |ts| KForm::from_terms(n, k, ts.into_iter().map(|(idx, c)| (idx, q(c, 1)))).unwrap())
}

fn skew_matrix(n: usize) -> impl Strategy<Value = RationalMatrix> {
    proptest::collection::vec(-2i64..=2, n * (n - 1) / 2).prop_map(move |cs| {
        let mut m = RationalMatrix::zeros(n, n);
        let mut it = cs.into_iter();
        for i in 0..n {
            for j in i + 1..n {
                let c = q(it.next().unwrap(), 1);
                m.set(i, j, c.clone());
                m.set(j, i, -c);
            }
        }
        m
    })
}

/// `ρ(X)` monomial by monomial: `ρ(X)e^i = −Σ_j X_ij e^j`, extended as a derivation.
fn lie_oracle(x: &RationalMatrix, a: &KForm) -> KForm {
    let n = a.ambient();
    let mut acc = KForm::zero(n, a.degree()).unwrap();
    for (idx, c) in a.terms() {
        for slot in 0..idx.len() {
            for j in 0..n {
                let v = x.get(idx[slot] - 1, j);
                if v.is_zero() {
                    continue;
                }
                let mut swapped = idx.clone();
                swapped[slot] = j + 1;
                if let Ok(t) = KForm::from_terms(n, idx.len(), [(swapped, -(c * v))]) {
                    acc = acc.add(&t).unwrap();
                }
            }
        }
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn wedge_is_graded_commutative(a in form(7, 2), b in form(7, 3), c in form(7, 1)) {
        prop_assert_eq!(a.wedge(&b).unwrap(), b.wedge(&a).unwrap());
        prop_assert_eq!(b.wedge(&c).unwrap(), c.wedge(&b).unwrap().neg());
        prop_assert_eq!(
            a.wedge(&b).unwrap().wedge(&c).unwrap(),
            a.wedge(&b.wedge(&c).unwrap()).unwrap()
        );
    }

    #[test]
    fn lie_action_is_a_derivation(x in skew_matrix(6), a in form(6, 2), b in form(6, 2)) {
        let op = LieOperator::from_dense(&x).unwrap();
        let lhs = lie_action(&op, &a.wedge(&b).unwrap()).unwrap();
        let rhs = lie_action(&op, &a).unwrap().wedge(&b).unwrap()
            .add(&a.wedge(&lie_action(&op, &b).unwrap()).unwrap()).unwrap();
        prop_assert_eq!(&lhs, &rhs);
        prop_assert_eq!(lie_action(&op, &a).unwrap(), lie_oracle(&x, &a));
    }

    #[test]
    fn tau2_is_sum_of_squares(es in proptest::collection::vec(two_form(6), 10)) {
        let m = FormMatrix::from_fn(5, 6, |a, b| {
            // row-major index into the strict upper triangle of a 5×5 matrix
            let i = a * (9 - a) / 2 + (b - a - 1);
            Ok(es[i].clone())
        }).unwrap();
        prop_assert_eq!(m.tau(2).unwrap(), m.sum_of_squares().unwrap());
    }

    #[test]
    fn tau4_matches_minor_expansion(es in proptest::collection::vec(two_form(8), 10)) {
        let m = FormMatrix::from_fn(5, 8, |a, b| {
            let i = a * (9 - a) / 2 + (b - a - 1);
            Ok(es[i].scale(&q(1, 3)))
        }).unwrap();
        prop_assert_eq!(m.tau(4).unwrap(), tau4_oracle(&m));
    }
}
