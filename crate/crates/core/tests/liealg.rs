mod common;

use cliffsys::clifford::{build, Variant};
use cliffsys::exactmat::SignedPermMatrix;
use cliffsys::forms::{psi_generators, PsiFamily};
use cliffsys::liealg::{
    bracket_closed, span_dim, triple_compositions, triple_span_decomposition, MatrixSpan,
};
use common::{dense, naive_rank};
use num_rational::BigRational;
use proptest::prelude::*;

fn pairs(g: &[SignedPermMatrix]) -> Vec<SignedPermMatrix> {
    let mut out = Vec::new();
    for a in 0..g.len() {
        for b in a + 1..g.len() {
            out.push(g[a].mul(&g[b]).unwrap());
        }
    }
    out
}

/// Rank of the family flattened to full `N²` vectors.
fn oracle_dim(mats: &[SignedPermMatrix]) -> usize {
    let rows = mats
        .iter()
        .map(|m| {
            dense(m)
                .into_iter()
                .flatten()
                .map(|v| BigRational::from_integer(v.into()))
                .collect()
        })
        .collect();
    naive_rank(rows)
}

#[test]
fn composition_spans_are_spin_algebras() {
    for m in 2..=9 {
        let c = build(m, Variant::Canonical).unwrap();
        let comps = c.compositions();
        assert_eq!(span_dim(&comps).unwrap(), m * (m + 1) / 2, "m = {m}");
        assert!(bracket_closed(&comps).unwrap(), "m = {m}");
    }
}

#[test]
fn named_subalgebras() {
    let c4 = build(4, Variant::Canonical).unwrap().compositions();
    assert_eq!(span_dim(&c4).unwrap(), 10);
    assert_eq!(oracle_dim(&c4), 10);
    for (fam, want) in [(PsiFamily::A, 21), (PsiFamily::B, 28), (PsiFamily::C, 36)] {
        let s = pairs(&psi_generators(fam).unwrap());
        assert_eq!(s.len(), want);
        assert_eq!(span_dim(&s).unwrap(), want);
        assert!(bracket_closed(&s).unwrap());
    }
    let c9 = build(9, Variant::Canonical).unwrap().compositions();
    assert_eq!(span_dim(&c9).unwrap(), 45);
}

#[test]
fn non_closed_family_is_detected() {
    // two generators of C_2 span symmetric matrices whose bracket is skew
    let g = build(2, Variant::Canonical).unwrap().generators().to_vec();
    assert!(!bracket_closed(&g[..2]).unwrap());
    // one composition and one triple of C_8 do not close either
    let c8 = build(8, Variant::Canonical).unwrap();
    let fam = vec![c8.composition(0, 1), triple_compositions(&c8)[10].clone()];
    assert!(!bracket_closed(&fam).unwrap());
}

#[test]
fn decomposition_of_two_forms() {
    let d = triple_span_decomposition().unwrap();
    assert_eq!((d.dim_pairs, d.dim_triples), (36, 84));
    assert!(d.orthogonal);
    assert_eq!(d.total, 120);
}

#[test]
fn membership_and_basis() {
    let c4 = build(4, Variant::Canonical).unwrap();
    let span = MatrixSpan::from_signed_perms(&c4.compositions()).unwrap();
    let inner = c4.composition(1, 2).mul(&c4.composition(2, 3)).unwrap();
    assert!(span.contains(&inner));
    assert!(!span.contains(&c4.generators()[0]));
    let basis = span.basis();
    assert_eq!(basis.rows(), 10);
    assert_eq!(span.basis(), basis);
    assert!(MatrixSpan::from_signed_perms(&[]).is_err());
}

fn family() -> impl Strategy<Value = Vec<SignedPermMatrix>> {
    (2usize..=8).prop_flat_map(|n| {
        proptest::collection::vec(
            (
                Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
                proptest::collection::vec(prop_oneof![Just(1i8), Just(-1i8)], n),
            )
                .prop_map(|(t, s)| SignedPermMatrix::from_images(t.into_iter().zip(s).collect()).unwrap()),
            1..50,
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn span_dim_matches_gauss_jordan(mats in family()) {
        prop_assert_eq!(span_dim(&mats).unwrap(), oracle_dim(&mats));
    }
}

#[test]
fn span_dim_of_order_16_families_matches_gauss_jordan() {
    let c8 = build(8, Variant::Canonical).unwrap();
    let mut fam = c8.compositions();
    fam.extend(triple_compositions(&c8).into_iter().take(14));
    assert_eq!(fam.len(), 50);
    assert_eq!(span_dim(&fam).unwrap(), oracle_dim(&fam));
}
