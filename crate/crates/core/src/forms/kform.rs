use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::blade::{wedge_sign, Blade, MAX_AMBIENT};
use super::kernel::IntTerms;
use crate::error::{Error, Result};

/// Exact element of `Λ^k ℝ^N`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct KForm {
    n: usize,
    k: usize,
    terms: BTreeMap<Blade, BigRational>,
}

fn check_ambient(n: usize) -> Result<()> {
    if n == 0 || n > MAX_AMBIENT {
        Err(Error::AmbientTooLarge(n))
    } else {
        Ok(())
    }
}

impl KForm {
    pub fn zero(n: usize, k: usize) -> Result<Self> {
        check_ambient(n)?;
        Ok(Self {
            n,
            k,
            terms: BTreeMap::new(),
        })
    }

    /// From `(indices, coefficient)` pairs; indices are 1-based, in any
    /// order (reordering contributes its sign), repeated indices vanish.
    pub fn from_terms<I>(n: usize, k: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, BigRational)>,
    {
        let mut f = Self::zero(n, k)?;
        for (idx, c) in terms {
            if idx.len() != k {
                return Err(Error::InvalidParameter(format!(
                    "monomial {idx:?} has degree {}, expected {k}",
                    idx.len()
                )));
            }
            if let Some((b, s)) = Blade::from_unsorted(&idx, n)? {
                let c = if s < 0 { -c } else { c };
                f.add_term(b, c);
            }
        }
        Ok(f)
    }

    /// The single monomial `c·e^{idx}`.
    pub fn monomial(n: usize, idx: &[usize], c: BigRational) -> Result<Self> {
        Self::from_terms(n, idx.len(), [(idx.to_vec(), c)])
    }

    pub(crate) fn from_int_terms(n: usize, k: usize, terms: IntTerms) -> Self {
        let terms = terms
            .into_iter()
            .filter(|&(_, v)| v != 0)
            .map(|(b, v)| (Blade(b), BigRational::from_integer(BigInt::from(v))))
            .collect();
        Self { n, k, terms }
    }

    /// Integer terms scaled by `scale`, or `None` if some coefficient is not
    /// an integer multiple of `1/scale` or does not fit.
    pub(crate) fn to_int_terms(&self, scale: &BigInt) -> Option<Vec<(u128, i128)>> {
        self.terms
            .iter()
            .map(|(b, c)| {
                let v = c * BigRational::from_integer(scale.clone());
                v.is_integer()
                    .then(|| v.to_integer().to_i128())
                    .flatten()
                    .map(|v| (b.0, v))
            })
            .collect()
    }

    pub(crate) fn add_term(&mut self, b: Blade, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(b).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&b);
        }
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in lexicographic order of their index tuples.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<usize>, &BigRational)> {
        self.terms.iter().map(|(b, c)| (b.indices(), c))
    }

    pub(crate) fn blades(&self) -> impl Iterator<Item = (&Blade, &BigRational)> {
        self.terms.iter()
    }

    /// Coefficient of `e^{idx}` with `idx` in any order (sign applied).
    pub fn coefficient(&self, idx: &[usize]) -> BigRational {
        match Blade::from_unsorted(idx, self.n) {
            Ok(Some((b, s))) => {
                let c = self.terms.get(&b).cloned().unwrap_or_else(BigRational::zero);
                if s < 0 {
                    -c
                } else {
                    c
                }
            }
            _ => BigRational::zero(),
        }
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::AmbientMismatch {
                left: self.n,
                right: other.n,
            });
        }
        if self.k != other.k {
            return Err(Error::InvalidParameter(format!(
                "degree mismatch: {} vs {}",
                self.k, other.k
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(*b, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-BigRational::one())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let terms = if c.is_zero() {
            BTreeMap::new()
        } else {
            self.terms.iter().map(|(b, v)| (*b, v * c)).collect()
        };
        Self {
            n: self.n,
            k: self.k,
            terms,
        }
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::AmbientMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let mut out = Self::zero(self.n, self.k + other.k)?;
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                match wedge_sign(a.0, b.0) {
                    0 => {}
                    s => {
                        let v = ca * cb;
                        out.add_term(Blade(a.0 | b.0), if s < 0 { -v } else { v });
                    }
                }
            }
        }
        Ok(out)
    }

    /// Hodge star for the standard metric and orientation `e^1 ∧ … ∧ e^N`.
    pub fn hodge_star(&self) -> Self {
        let full = if self.n == 128 {
            u128::MAX
        } else {
            (1u128 << self.n) - 1
        };
        let mut out = Self {
            n: self.n,
            k: self.n - self.k,
            terms: BTreeMap::new(),
        };
        for (b, c) in &self.terms {
            let comp = full & !b.0;
            // e^I ∧ ⋆e^I = vol
            let s = wedge_sign(b.0, comp);
            out.add_term(Blade(comp), if s < 0 { -c.clone() } else { c.clone() });
        }
        out
    }

    /// Terms supported on `coords` (1-based, increasing), relabelled `1..=len`.
    pub fn restrict(&self, coords: &[usize]) -> Result<Self> {
        let mut pos = vec![0usize; self.n + 1];
        for (p, &c) in coords.iter().enumerate() {
            if c == 0 || c > self.n {
                return Err(Error::InvalidParameter(format!(
                    "coordinate {c} outside 1..={}",
                    self.n
                )));
            }
            pos[c] = p + 1;
        }
        let mut out = Self::zero(coords.len(), self.k)?;
        for (b, c) in &self.terms {
            let idx = b.indices();
            if idx.iter().all(|&i| pos[i] != 0) {
                let mapped: Vec<usize> = idx.iter().map(|&i| pos[i]).collect();
                if let Some((nb, s)) = Blade::from_unsorted(&mapped, coords.len())? {
                    out.add_term(nb, if s < 0 { -c.clone() } else { c.clone() });
                }
            }
        }
        Ok(out)
    }

    /// Positive `gcd` of the coefficients (`gcd` of numerators over `lcm` of
    /// denominators); zero for the zero form.
    pub fn content(&self) -> BigRational {
        let (g, l) = self
            .terms
            .values()
            .fold((BigInt::zero(), BigInt::one()), |(g, l), c| {
                (g.gcd(c.numer()), l.lcm(c.denom()))
            });
        BigRational::new(g, l)
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(BigRational::is_integer)
    }

    pub fn to_json(&self) -> FormJson {
        FormJson {
            n: self.n,
            k: self.k,
            terms: self
                .terms
                .iter()
                .map(|(b, c)| FormTermJson {
                    idx: b.indices(),
                    c: c.to_string(),
                })
                .collect(),
        }
    }

    pub fn from_json(doc: &FormJson) -> Result<Self> {
        let mut f = Self::zero(doc.n, doc.k)?;
        for t in &doc.terms {
            let c = BigRational::from_str(&t.c)
                .map_err(|e| Error::Json(format!("coefficient {:?}: {e}", t.c)))?;
            if c.is_zero() {
                return Err(Error::Json(format!("zero coefficient at {:?}", t.idx)));
            }
            if t.idx.len() != doc.k {
                return Err(Error::Json(format!("monomial {:?} has the wrong degree", t.idx)));
            }
            let b = Blade::from_indices(&t.idx, doc.n).map_err(|e| Error::Json(e.to_string()))?;
            if f.terms.insert(b, c).is_some() {
                return Err(Error::Json(format!("monomial {:?} repeated", t.idx)));
            }
        }
        Ok(f)
    }

    /// Text in the shorthand `𝚜12 = e^1 ∧ e^2`, with `1′…8′` for `9…16` when
    /// `N ≤ 16`; larger ambients use `e[i,j,…]`.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (b, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, false) => {}
                (0, true) => s.push('-'),
                (_, false) => s.push_str(" + "),
                (_, true) => s.push_str(" - "),
            }
            if !mag.is_one() {
                if mag.is_integer() {
                    s.push_str(&mag.to_string());
                } else {
                    s.push_str(&format!("({mag})"));
                }
            }
            s.push_str(&monomial_text(*b, self.n));
        }
        s
    }

    /// Parses the output of [`to_text`] (and hand-written variants of it:
    /// `s` for `𝚜`, `'` or `′` for primes, `−` for minus, free spacing).
    pub fn parse_text(n: usize, k: usize, text: &str) -> Result<Self> {
        let mut f = Self::zero(n, k)?;
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if t == "0" {
            return Ok(f);
        }
        let chars: Vec<char> = t.chars().collect();
        let mut p = 0;
        let bad = |msg: &str, p: usize| Error::InvalidParameter(format!("form text at {p}: {msg}"));
        while p < chars.len() {
            let mut sign = BigRational::one();
            while p < chars.len() && matches!(chars[p], '+' | '-' | '−') {
                if chars[p] != '+' {
                    sign = -sign;
                }
                p += 1;
            }
            // optional coefficient: integer, p/q, or (p/q)
            let mut coef = String::new();
            let paren = p < chars.len() && chars[p] == '(';
            if paren {
                p += 1;
            }
            while p < chars.len()
                && (chars[p].is_ascii_digit() || chars[p] == '/' || (paren && chars[p] != ')'))
            {
                coef.push(chars[p]);
                p += 1;
            }
            if paren {
                if p >= chars.len() || chars[p] != ')' {
                    return Err(bad("unclosed parenthesis", p));
                }
                p += 1;
            }
            let c = if coef.is_empty() {
                BigRational::one()
            } else {
                BigRational::from_str(&coef).map_err(|_| bad("bad coefficient", p))?
            };
            let mut idx = Vec::new();
            match chars.get(p) {
                Some('s' | '𝚜') => {
                    p += 1;
                    while p < chars.len() && chars[p].is_ascii_digit() {
                        let mut i = chars[p].to_digit(10).expect("digit") as usize;
                        p += 1;
                        if p < chars.len() && matches!(chars[p], '\'' | '′') {
                            i += 8;
                            p += 1;
                        }
                        idx.push(i);
                    }
                }
                Some('e') if chars.get(p + 1) == Some(&'[') => {
                    p += 2;
                    let end = chars[p..]
                        .iter()
                        .position(|&c| c == ']')
                        .ok_or_else(|| bad("unclosed index list", p))?;
                    let inner: String = chars[p..p + end].iter().collect();
                    for part in inner.split(',') {
                        idx.push(part.parse().map_err(|_| bad("bad index", p))?);
                    }
                    p += end + 1;
                }
                _ => return Err(bad("expected a monomial", p)),
            }
            if idx.len() != k {
                return Err(bad("monomial of the wrong degree", p));
            }
            if let Some((b, s)) = Blade::from_unsorted(&idx, n)? {
                let v = sign * c;
                f.add_term(b, if s < 0 { -v } else { v });
            }
        }
        Ok(f)
    }
}

fn monomial_text(b: Blade, n: usize) -> String {
    if n <= 16 {
        let mut s = String::from("𝚜");
        for i in b.indices() {
            if i > 8 {
                s.push_str(&format!("{}′", i - 8));
            } else {
                s.push_str(&i.to_string());
            }
        }
        s
    } else {
        let ix: Vec<String> = b.indices().iter().map(ToString::to_string).collect();
        format!("e[{}]", ix.join(","))
    }
}

impl fmt::Debug for KForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KForm(N={}, k={}: {})", self.n, self.k, self.to_text())
    }
}

impl fmt::Display for KForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// `{"N": n, "k": k, "terms": [{"idx": [...], "c": "p/q"}, ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormJson {
    #[serde(rename = "N")]
    pub n: usize,
    pub k: usize,
    pub terms: Vec<FormTermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormTermJson {
    pub idx: Vec<usize>,
    pub c: String,
}
