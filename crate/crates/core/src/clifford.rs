//! Clifford systems `C_m = (P_0, …, P_m)`: construction, verification,
//! trace classes, conversion to and from `Cl_{0,m−1}` representations, and
//! the exact commutant/normalizer dimensions.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebras::{block_extension, left_mult, right_mult, Unit};
use crate::error::{Error, Result};
use crate::exactmat::{MatrixJson, SignedPermMatrix, SparseEchelon};

/// Largest `m` with explicit generators.
pub const MAX_M: usize = 16;

const DELTA: [u64; 16] = [1, 2, 4, 4, 8, 8, 8, 8, 16, 32, 64, 64, 128, 128, 128, 128];

/// Dimension `δ(m)`; irreducible Clifford systems `C_m` live on `ℝ^{2δ(m)}`.
pub fn delta(m: usize) -> Result<u64> {
    match m {
        0 => Err(Error::InvalidParameter("delta needs m >= 1".into())),
        1..=16 => Ok(DELTA[m - 1]),
        _ => delta(m - 8)?
            .checked_mul(16)
            .ok_or_else(|| Error::InvalidParameter(format!("delta({m}) overflows u64"))),
    }
}

/// Sign of `tr(P_0⋯P_m)`, meaningful when `m ≡ 0 mod 4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassTag {
    Plus,
    Minus,
    #[serde(rename = "n/a")]
    NotApplicable,
}

/// Which of the two equivalence classes `build` produces for `m ≡ 0 mod 4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    /// The chain of explicit constructions.
    #[default]
    Canonical,
    /// The canonical system with `P_1` negated; flips the trace sign.
    Opposite,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliffordSystem {
    generators: Vec<SignedPermMatrix>,
    class_tag: ClassTag,
}

impl CliffordSystem {
    /// Wraps `P_0, …, P_m`; checks only the shape, use [`verify`] for relations.
    pub fn new(generators: Vec<SignedPermMatrix>) -> Result<Self> {
        if generators.len() < 2 {
            return Err(Error::InvalidParameter(
                "a Clifford system needs at least two generators".into(),
            ));
        }
        let n = generators[0].order();
        if let Some(g) = generators.iter().find(|g| g.order() != n) {
            return Err(Error::OrderMismatch {
                left: n,
                right: g.order(),
            });
        }
        let m = generators.len() - 1;
        let trace = SignedPermMatrix::product(&generators)?.trace();
        let class_tag = match (m % 4, trace.signum()) {
            (0, 1) => ClassTag::Plus,
            (0, -1) => ClassTag::Minus,
            _ => ClassTag::NotApplicable,
        };
        Ok(Self {
            generators,
            class_tag,
        })
    }

    pub fn m(&self) -> usize {
        self.generators.len() - 1
    }

    /// Ambient dimension `N`.
    pub fn order(&self) -> usize {
        self.generators[0].order()
    }

    pub fn generators(&self) -> &[SignedPermMatrix] {
        &self.generators
    }

    pub fn class_tag(&self) -> ClassTag {
        self.class_tag
    }

    /// `P_{αβ} = P_α P_β`.
    pub fn composition(&self, a: usize, b: usize) -> SignedPermMatrix {
        self.generators[a]
            .mul(&self.generators[b])
            .expect("generators share the order")
    }

    /// All `P_{αβ}` with `α < β`, lexicographically.
    pub fn compositions(&self) -> Vec<SignedPermMatrix> {
        let k = self.generators.len();
        (0..k)
            .flat_map(|a| (a + 1..k).map(move |b| (a, b)))
            .map(|(a, b)| self.composition(a, b))
            .collect()
    }

    pub fn to_json(&self) -> SystemJson {
        SystemJson {
            m: self.m(),
            n: self.order(),
            class: self.class_tag,
            generators: self.generators.iter().map(SignedPermMatrix::to_json).collect(),
        }
    }

    pub fn from_json(doc: &SystemJson) -> Result<Self> {
        let gens = doc
            .generators
            .iter()
            .map(SignedPermMatrix::from_json)
            .collect::<Result<Vec<_>>>()?;
        if gens.len() != doc.m + 1 {
            return Err(Error::Json(format!(
                "m = {} but {} generators given",
                doc.m,
                gens.len()
            )));
        }
        let sys = Self::new(gens)?;
        if sys.order() != doc.n {
            return Err(Error::Json(format!(
                "N = {} but generators have order {}",
                doc.n,
                sys.order()
            )));
        }
        Ok(sys)
    }
}

/// JSON form of a Clifford system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemJson {
    pub m: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub class: ClassTag,
    pub generators: Vec<MatrixJson>,
}

/// `[[0, −X], [X, 0]]`.
fn jblock(x: &SignedPermMatrix) -> SignedPermMatrix {
    SignedPermMatrix::off_diagonal_skew(x)
}

/// One step of the doubling procedure: `C_m` on `ℝ^N` to `C_{m+1}` on `ℝ^{2N}`
/// with `Q_0` the swap, `Q_α = [[0, −P_{0α}], [P_{0α}, 0]]`, `Q_{m+1} = diag(Id, −Id)`.
pub fn double(c: &CliffordSystem) -> CliffordSystem {
    let n = c.order();
    let mut gens = Vec::with_capacity(c.m() + 2);
    gens.push(SignedPermMatrix::block_swap(n));
    gens.extend((1..=c.m()).map(|a| jblock(&c.composition(0, a))));
    gens.push(SignedPermMatrix::block_diag_split(n));
    CliffordSystem::new(gens).expect("doubling preserves orders")
}

/// Keeps `P_0..P_{keep}` (exclusive), inserts `extra`, then the last generator.
fn augment(c: &CliffordSystem, keep: usize, extra: Vec<SignedPermMatrix>) -> CliffordSystem {
    let g = c.generators();
    let mut gens: Vec<_> = g[..keep].to_vec();
    gens.extend(extra);
    gens.push(g[g.len() - 1].clone());
    CliffordSystem::new(gens).expect("augmentation preserves orders")
}

fn c1() -> CliffordSystem {
    CliffordSystem::new(vec![
        SignedPermMatrix::block_swap(1),
        SignedPermMatrix::block_diag_split(1),
    ])
    .expect("order 2")
}

fn octo(u: Unit) -> SignedPermMatrix {
    right_mult(u, 8).expect("octonion unit")
}

/// The quaternionic triple anticommuting with `C_13` on `ℝ^{256}`
/// (block of order 128, before the `[[0, −Y], [Y, 0]]` wrapping).
fn c13_augmentation() -> [SignedPermMatrix; 3] {
    let sx = SignedPermMatrix::block_swap(1);
    let j2 = SignedPermMatrix::off_diagonal_skew(&SignedPermMatrix::identity(1));
    let id2 = SignedPermMatrix::identity(2);
    let lk = left_mult(Unit::K, 4).expect("quaternion unit");
    let lj_rk = left_mult(Unit::J, 4)
        .and_then(|l| l.mul(&right_mult(Unit::K, 4)?))
        .expect("quaternion units");
    [
        sx.kron(&id2).kron(&lk).kron_identity(8),
        sx.kron(&j2).kron(&lj_rk).kron_identity(8),
        block_extension(Unit::H, 128).expect("supported block"),
    ]
}

/// The chain `C_1, …, C_16`, each built from its predecessors.
pub fn canonical_chain() -> Vec<CliffordSystem> {
    let mut c: Vec<CliffordSystem> = Vec::with_capacity(MAX_M);
    c.push(c1());
    let get = |c: &Vec<CliffordSystem>, m: usize| c[m - 1].clone();
    c.push(double(&get(&c, 1)));
    c.push(double(&get(&c, 2)));
    // C_4: the extra structure P_{12} of C_2, doubled up
    let p12 = get(&c, 2).composition(1, 2);
    c.push(augment(&get(&c, 3), 3, vec![jblock(&p12)]));
    let c5 = double(&get(&c, 4));
    let octs: Vec<_> = [Unit::F, Unit::G, Unit::H]
        .into_iter()
        .map(|u| jblock(&octo(u)))
        .collect();
    let c8 = augment(&c5, 5, octs);
    c.push(c5);
    // C_6, C_7 keep S_8 last so every system ends in diag(Id, −Id)
    let s = c8.generators();
    c.push(augment(&c8, 6, vec![]));
    c.push(CliffordSystem::new(s[..7].iter().chain([&s[8]]).cloned().collect()).expect("same order"));
    c.push(c8);
    for m in 9..=11 {
        let prev = get(&c, m - 1);
        c.push(double(&prev));
    }
    let rh = block_extension(Unit::H, 64).expect("supported block");
    let c12 = augment(&get(&c, 11), 11, vec![jblock(&rh)]);
    c.push(c12);
    let c13 = double(&get(&c, 12));
    c.push(c13.clone());
    let extra = c13_augmentation();
    for m in 14..=16 {
        let ys = extra[..m - 13].iter().map(jblock).collect();
        c.push(augment(&c13, 13, ys));
    }
    c
}

/// The Clifford system `C_m`, `1 ≤ m ≤ 16`.
pub fn build(m: usize, variant: Variant) -> Result<CliffordSystem> {
    if !(1..=MAX_M).contains(&m) {
        return Err(Error::InvalidParameter(format!("m = {m} outside 1..={MAX_M}")));
    }
    if variant == Variant::Opposite && !m.is_multiple_of(4) {
        return Err(Error::Unsupported(format!(
            "only one equivalence class exists for m = {m} (m not divisible by 4)"
        )));
    }
    let c = canonical_chain().swap_remove(m - 1);
    match variant {
        Variant::Canonical => Ok(c),
        Variant::Opposite => {
            let mut gens = c.generators;
            gens[1] = gens[1].negate();
            CliffordSystem::new(gens)
        }
    }
}

/// Representative of the other trace class for `m ∈ {4, 8}`, built from
/// left multiplications.
pub fn tilde(m: usize) -> Result<CliffordSystem> {
    let (base, units, dim): (_, &[Unit], _) = match m {
        4 => (build(4, Variant::Canonical)?, &[Unit::I, Unit::J, Unit::K], 4),
        8 => (build(8, Variant::Canonical)?, &Unit::IMAGINARY, 8),
        _ => {
            return Err(Error::Unsupported(format!(
                "tilde is defined for m = 4, 8, not {m}"
            )))
        }
    };
    let extra = units
        .iter()
        .map(|&u| left_mult(u, dim).map(|l| jblock(&l)))
        .collect::<Result<Vec<_>>>()?;
    Ok(augment(&base, 1, extra))
}

/// `tr(P_0 P_1 ⋯ P_m)`.
pub fn class_trace(c: &CliffordSystem) -> i64 {
    SignedPermMatrix::product(c.generators())
        .expect("generators share the order")
        .trace()
}

/// The first relation violated, with 0-based generator indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub check: String,
    pub generators: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub symmetric: bool,
    pub involutions: bool,
    pub anticommuting: bool,
    pub irreducible_dimension: bool,
    pub first_failure: Option<Failure>,
}

impl VerifyReport {
    pub fn all_ok(&self) -> bool {
        self.symmetric && self.involutions && self.anticommuting && self.irreducible_dimension
    }
}

/// Checks the Clifford relations; pairs are scanned in parallel, but the
/// reported failure is always the lexicographically first.
pub fn verify(c: &CliffordSystem) -> VerifyReport {
    let g = c.generators();
    let first = |pred: &(dyn Fn(&SignedPermMatrix) -> bool + Sync)| g.par_iter().position_first(|p| !pred(p));
    let sym = first(&|p| p.is_symmetric());
    let inv = first(&|p| p.square().is_identity());
    let pairs: Vec<(usize, usize)> = (0..g.len())
        .flat_map(|a| (a + 1..g.len()).map(move |b| (a, b)))
        .collect();
    let anti = pairs
        .par_iter()
        .position_first(|&(a, b)| !g[a].anticommutes(&g[b]))
        .map(|i| pairs[i]);
    let irreducible = delta(c.m()).is_ok_and(|d| d * 2 == c.order() as u64);

    let first_failure = if let Some(i) = sym {
        Some(Failure {
            check: "symmetric".into(),
            generators: vec![i],
        })
    } else if let Some(i) = inv {
        Some(Failure {
            check: "involution".into(),
            generators: vec![i],
        })
    } else if let Some((a, b)) = anti {
        Some(Failure {
            check: "anticommuting".into(),
            generators: vec![a, b],
        })
    } else if !irreducible {
        Some(Failure {
            check: "irreducible-dimension".into(),
            generators: vec![],
        })
    } else {
        None
    };
    VerifyReport {
        symmetric: sym.is_none(),
        involutions: inv.is_none(),
        anticommuting: anti.is_none(),
        irreducible_dimension: irreducible,
        first_failure,
    }
}

/// `E_1, …, E_{m−1}` on `ℝ^{δ}`: skew, `E_α² = −Id`, pairwise anticommuting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliffordRepresentation {
    dim: usize,
    matrices: Vec<SignedPermMatrix>,
}

impl CliffordRepresentation {
    pub fn new(dim: usize, matrices: Vec<SignedPermMatrix>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidRepresentation("dimension must be positive".into()));
        }
        for (a, e) in matrices.iter().enumerate() {
            if e.order() != dim {
                return Err(Error::InvalidRepresentation(format!(
                    "E_{} has order {}, expected {dim}",
                    a + 1,
                    e.order()
                )));
            }
            if !e.is_complex_structure() {
                return Err(Error::InvalidRepresentation(format!(
                    "E_{} is not a skew complex structure",
                    a + 1
                )));
            }
        }
        for a in 0..matrices.len() {
            for b in a + 1..matrices.len() {
                if !matrices[a].anticommutes(&matrices[b]) {
                    return Err(Error::InvalidRepresentation(format!(
                        "E_{} and E_{} do not anticommute",
                        a + 1,
                        b + 1
                    )));
                }
            }
        }
        Ok(Self { dim, matrices })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrices(&self) -> &[SignedPermMatrix] {
        &self.matrices
    }

    /// The `m` of the associated Clifford system.
    pub fn m(&self) -> usize {
        self.matrices.len() + 1
    }
}

/// Restricts `E_α = P_α P_m` to the `(+1)`-eigenspace `{(u, u)}` of `P_0`,
/// written in the basis `(e_a, e_a)`.
pub fn to_representation(c: &CliffordSystem) -> Result<CliffordRepresentation> {
    let n = c.order();
    if !n.is_multiple_of(2) || c.generators()[0] != SignedPermMatrix::block_swap(n / 2) {
        return Err(Error::NotSwapForm);
    }
    let h = n / 2;
    let m = c.m();
    let mut es = Vec::with_capacity(m - 1);
    for a in 1..m {
        let e = c.composition(a, m);
        let mut images = Vec::with_capacity(h);
        for col in 0..h {
            let (r, s) = e.image(col);
            let (r2, s2) = e.image(col + h);
            if s != s2 || r % h != r2 % h || r == r2 {
                return Err(Error::InvalidRepresentation(format!(
                    "P_{a}P_{m} does not preserve the eigenspace of P_0"
                )));
            }
            images.push((r % h, s));
        }
        es.push(SignedPermMatrix::from_images(images)?);
    }
    CliffordRepresentation::new(h, es)
}

/// `P_0(u, v) = (v, u)`, `P_α(u, v) = (−E_α v, E_α u)`, `P_m = diag(Id, −Id)`.
pub fn from_representation(rep: &CliffordRepresentation) -> Result<CliffordSystem> {
    let d = rep.dim();
    let mut gens = Vec::with_capacity(rep.m() + 1);
    gens.push(SignedPermMatrix::block_swap(d));
    gens.extend(rep.matrices().iter().map(jblock));
    gens.push(SignedPermMatrix::block_diag_split(d));
    CliffordSystem::new(gens)
}

/// Index of the unknown `X_{ij}`, `i < j`, in the strict upper triangle.
fn skew_index(n: usize, i: usize, j: usize) -> u32 {
    debug_assert!(i < j);
    (i * n - i * (i + 1) / 2 + (j - i - 1)) as u32
}

/// `X_{ab}` of a skew unknown as `(variable, sign)`; `None` on the diagonal.
fn skew_entry(n: usize, a: usize, b: usize) -> Option<(u32, i64)> {
    match a.cmp(&b) {
        std::cmp::Ordering::Less => Some((skew_index(n, a, b), 1)),
        std::cmp::Ordering::Greater => Some((skew_index(n, b, a), -1)),
        std::cmp::Ordering::Equal => None,
    }
}

/// Terms of `(XP − PX)_{ab}` for skew unknown `X`.
fn commutator_terms(
    n: usize,
    p: &SignedPermMatrix,
    pt: &SignedPermMatrix,
    a: usize,
    b: usize,
) -> Vec<(u32, i64)> {
    let mut terms = Vec::with_capacity(2);
    // (XP)_{ab} = s_b X_{a, t_b}
    let (tb, sb) = p.image(b);
    if let Some((v, s)) = skew_entry(n, a, tb) {
        terms.push((v, s * i64::from(sb)));
    }
    // (PX)_{ab} = s X_{c, b} where P e_c = s e_a
    let (c, sc) = pt.image(a);
    if let Some((v, s)) = skew_entry(n, c, b) {
        terms.push((v, -s * i64::from(sc)));
    }
    terms
}

fn common_order(mats: &[SignedPermMatrix]) -> Result<usize> {
    let n = mats
        .first()
        .ok_or_else(|| Error::InvalidParameter("empty matrix family".into()))?
        .order();
    match mats.iter().find(|p| p.order() != n) {
        Some(p) => Err(Error::OrderMismatch {
            left: n,
            right: p.order(),
        }),
        None => Ok(n),
    }
}

/// `dim {X ∈ so(N) : XP = PX for all P}`.
pub fn commutant_dim(mats: &[SignedPermMatrix]) -> Result<usize> {
    let n = common_order(mats)?;
    let nvars = n * (n - 1) / 2;
    let mut ech = SparseEchelon::new();
    for p in mats {
        let pt = p.transpose();
        for a in 0..n {
            for b in 0..n {
                let row = SparseEchelon::row_from_pairs(commutator_terms(n, p, &pt, a, b));
                ech.insert(row);
            }
        }
    }
    Ok(nvars - ech.rank())
}

/// `dim {X ∈ so(N) : [X, P_α] ∈ span(P_0, …, P_m) for all α}`.
pub fn normalizer_dim(c: &CliffordSystem) -> Result<usize> {
    let gens = c.generators();
    let n = c.order();
    let k = gens.len();
    let nx = n * (n - 1) / 2;
    let cvar = |a: usize, b: usize| (nx + a * k + b) as u32;
    let mut full = SparseEchelon::new();
    let mut c_only = SparseEchelon::new();
    for (alpha, p) in gens.iter().enumerate() {
        let pt = p.transpose();
        // [X, P] is symmetric: the upper triangle with diagonal suffices
        for a in 0..n {
            for b in a..n {
                let span_terms: Vec<(u32, i64)> = gens
                    .iter()
                    .enumerate()
                    .filter_map(|(beta, q)| {
                        let v = q.entry(a, b);
                        (v != 0).then(|| (cvar(alpha, beta), -i64::from(v)))
                    })
                    .collect();
                let mut terms = commutator_terms(n, p, &pt, a, b);
                terms.extend(span_terms.iter().copied());
                full.insert(SparseEchelon::row_from_pairs(terms));
                c_only.insert(SparseEchelon::row_from_pairs(span_terms));
            }
        }
    }
    let total = nx + k * k;
    let null_full = total - full.rank();
    let null_c = k * k - c_only.rank();
    Ok(null_full - null_c)
}

/// Whether irreducible even Clifford structures of rank `m + 1` are essential.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Essentiality {
    Essential,
    NonEssential,
    Undetermined,
}

impl fmt::Display for Essentiality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Essentiality::Essential => "Essential",
            Essentiality::NonEssential => "NonEssential",
            Essentiality::Undetermined => "Undetermined",
        };
        f.write_str(s)
    }
}

pub fn classify_essential(m: usize) -> Result<Essentiality> {
    match m {
        0 => Err(Error::InvalidParameter("classify_essential needs m >= 1".into())),
        _ => Ok(match m % 8 {
            3 | 5 | 6 | 7 => Essentiality::Essential,
            0 | 4 => Essentiality::NonEssential,
            _ => Essentiality::Undetermined,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_table_and_periodicity() {
        assert_eq!(delta(1).unwrap(), 1);
        assert_eq!(delta(9).unwrap(), 16);
        assert_eq!(delta(20).unwrap(), 1024);
        assert!(delta(0).is_err());
    }

    #[test]
    fn chain_has_the_right_shapes() {
        for (i, c) in canonical_chain().iter().enumerate() {
            assert_eq!(c.m(), i + 1);
            assert_eq!(c.order() as u64, 2 * delta(i + 1).unwrap());
        }
    }

    #[test]
    fn opposite_requires_two_classes() {
        assert!(build(5, Variant::Opposite).is_err());
        assert!(build(0, Variant::Canonical).is_err());
        assert!(build(17, Variant::Canonical).is_err());
        assert!(tilde(5).is_err());
    }

    #[test]
    fn skew_indexing_is_a_bijection() {
        let n = 7;
        let mut seen = vec![false; n * (n - 1) / 2];
        for i in 0..n {
            for j in i + 1..n {
                let k = skew_index(n, i, j) as usize;
                assert!(!seen[k]);
                seen[k] = true;
            }
        }
        assert!(seen.into_iter().all(|s| s));
    }

    #[test]
    fn essentiality_pattern() {
        assert_eq!(classify_essential(3).unwrap(), Essentiality::Essential);
        assert_eq!(classify_essential(8).unwrap(), Essentiality::NonEssential);
        assert_eq!(classify_essential(9).unwrap(), Essentiality::Undetermined);
        assert!(classify_essential(0).is_err());
    }
}
