//! Lie polynomials in the Hall basis and the bracket normal form.

use std::collections::btree_map::{self, BTreeMap};
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{Arc, OnceLock, RwLock};

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::hall::{HallWord, Letter, MultiDegree, Tree};

/// Exact rational coefficient.
pub type Scalar = BigRational;

pub fn scalar(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Scalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// A finite linear combination of Hall words with nonzero rational
/// coefficients, kept sorted by the Hall order.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LiePoly {
    terms: BTreeMap<HallWord, Scalar>,
}

impl LiePoly {
    pub fn zero() -> LiePoly {
        LiePoly::default()
    }

    pub fn word(w: HallWord) -> LiePoly {
        LiePoly::term(w, Scalar::one())
    }

    pub fn letter(l: Letter) -> LiePoly {
        LiePoly::word(HallWord::letter(l))
    }

    pub fn x() -> LiePoly {
        LiePoly::letter(Letter::X)
    }

    pub fn y() -> LiePoly {
        LiePoly::letter(Letter::Y)
    }

    pub fn term(w: HallWord, c: Scalar) -> LiePoly {
        let mut p = LiePoly::zero();
        p.add_term(w, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (HallWord, Scalar)>>(terms: I) -> LiePoly {
        let mut p = LiePoly::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> btree_map::Iter<'_, HallWord, Scalar> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &HallWord) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    /// The word with the smallest Hall order, if any.
    pub fn leading(&self) -> Option<(&HallWord, &Scalar)> {
        self.terms.iter().next()
    }

    /// The single word of a monomial `1 * w`.
    pub fn as_word(&self) -> Option<&HallWord> {
        match self.leading() {
            Some((w, c)) if self.len() == 1 && c.is_one() => Some(w),
            _ => None,
        }
    }

    pub fn add_term(&mut self, w: HallWord, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &LiePoly, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (w, a) in &other.terms {
            self.add_term(w.clone(), a * c);
        }
    }

    pub fn scale(&self, c: &Scalar) -> LiePoly {
        if c.is_zero() {
            return LiePoly::zero();
        }
        LiePoly {
            terms: self.terms.iter().map(|(w, a)| (w.clone(), a * c)).collect(),
        }
    }

    /// Common multidegree of all terms; `None` for zero or mixed input.
    pub fn multidegree(&self) -> Option<MultiDegree> {
        let mut it = self.terms.keys().map(HallWord::multidegree);
        let first = it.next()?;
        it.all(|md| md == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.multidegree().is_some()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(HallWord::degree).max()
    }

    /// Splits into homogeneous components, ordered by multidegree.
    pub fn homogeneous_parts(&self) -> BTreeMap<MultiDegree, LiePoly> {
        let mut parts: BTreeMap<MultiDegree, LiePoly> = BTreeMap::new();
        for (w, c) in &self.terms {
            parts
                .entry(w.multidegree())
                .or_default()
                .terms
                .insert(w.clone(), c.clone());
        }
        parts
    }

    /// If `self = alpha * other` for some scalar, returns `alpha`.
    pub fn ratio_to(&self, other: &LiePoly) -> Option<Scalar> {
        let (w, c) = other.leading()?;
        let alpha = self.coeff(w) / c;
        (other.scale(&alpha) == *self).then_some(alpha)
    }

    /// Scales to integer coefficients with content 1 and a positive leading
    /// (Hall-smallest) coefficient.
    pub fn canonicalize(&self) -> LiePoly {
        let coeffs: Vec<Scalar> = self.terms.values().cloned().collect();
        let factor = crate::linalg::primitive_factor(&coeffs);
        self.scale(&factor)
    }
}

impl From<HallWord> for LiePoly {
    fn from(w: HallWord) -> LiePoly {
        LiePoly::word(w)
    }
}

impl<'a> IntoIterator for &'a LiePoly {
    type Item = (&'a HallWord, &'a Scalar);
    type IntoIter = btree_map::Iter<'a, HallWord, Scalar>;

    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

impl AddAssign<&LiePoly> for LiePoly {
    fn add_assign(&mut self, rhs: &LiePoly) {
        self.add_scaled(rhs, &Scalar::one());
    }
}

impl SubAssign<&LiePoly> for LiePoly {
    fn sub_assign(&mut self, rhs: &LiePoly) {
        self.add_scaled(rhs, &-Scalar::one());
    }
}

impl Add for &LiePoly {
    type Output = LiePoly;

    fn add(self, rhs: &LiePoly) -> LiePoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &LiePoly {
    type Output = LiePoly;

    fn sub(self, rhs: &LiePoly) -> LiePoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Add for LiePoly {
    type Output = LiePoly;

    fn add(mut self, rhs: LiePoly) -> LiePoly {
        self += &rhs;
        self
    }
}

impl Sub for LiePoly {
    type Output = LiePoly;

    fn sub(mut self, rhs: LiePoly) -> LiePoly {
        self -= &rhs;
        self
    }
}

impl Neg for &LiePoly {
    type Output = LiePoly;

    fn neg(self) -> LiePoly {
        LiePoly {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

impl Neg for LiePoly {
    type Output = LiePoly;

    fn neg(self) -> LiePoly {
        -&self
    }
}

impl Mul<&LiePoly> for &Scalar {
    type Output = LiePoly;

    fn mul(self, rhs: &LiePoly) -> LiePoly {
        rhs.scale(self)
    }
}

impl fmt::Display for LiePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, false) => {}
                (0, true) => f.write_str("-")?,
                (_, false) => f.write_str(" + ")?,
                (_, true) => f.write_str(" - ")?,
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for LiePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LiePoly({self})")
    }
}

type ProductCache = RwLock<HashMap<(HallWord, HallWord), Arc<LiePoly>>>;

// Normalized products `[u, v]` with `u > v`.
static PRODUCTS: OnceLock<ProductCache> = OnceLock::new();

fn products() -> &'static ProductCache {
    PRODUCTS.get_or_init(Default::default)
}

/// The bracket of two Hall words, rewritten into the Hall basis.
pub fn bracket_words(u: &HallWord, v: &HallWord) -> LiePoly {
    bracket_words_guarded(u, v, 0).as_ref().clone()
}

fn work_bound(degree: u32) -> u32 {
    // The collection process recurses at most once per inversion; this is
    // far above anything reachable.
    64 + 8 * degree * degree
}

fn bracket_words_guarded(u: &HallWord, v: &HallWord, depth: u32) -> Arc<LiePoly> {
    use std::cmp::Ordering::*;
    match u.cmp(v) {
        Equal => return Arc::new(LiePoly::zero()),
        Less => return Arc::new(-bracket_words_guarded(v, u, depth).as_ref()),
        Greater => {}
    }
    let degree = u.degree() + v.degree();
    assert!(
        depth <= work_bound(degree),
        "Hall normalization of [{u}, {v}] exceeded its work bound"
    );
    let key = (u.clone(), v.clone());
    if let Some(p) = products().read().unwrap().get(&key) {
        return p.clone();
    }
    let result = match u.factors() {
        Some((u1, u2)) if u2 > v => {
            // [[u1, u2], v] = [[u1, v], u2] + [u1, [u2, v]]
            let left = bracket_words_guarded(u1, v, depth + 1);
            let right = bracket_words_guarded(u2, v, depth + 1);
            let mut out = bracket_poly_word(&left, u2, depth + 1);
            out += &bracket_word_poly(u1, &right, depth + 1);
            out
        }
        _ => LiePoly::word(HallWord::bracket_unchecked(u, v)),
    };
    let result = Arc::new(result);
    products()
        .write()
        .unwrap()
        .entry(key)
        .or_insert(result)
        .clone()
}

fn bracket_poly_word(p: &LiePoly, w: &HallWord, depth: u32) -> LiePoly {
    let mut out = LiePoly::zero();
    for (u, c) in p {
        out.add_scaled(&bracket_words_guarded(u, w, depth), c);
    }
    out
}

fn bracket_word_poly(w: &HallWord, p: &LiePoly, depth: u32) -> LiePoly {
    let mut out = LiePoly::zero();
    for (u, c) in p {
        out.add_scaled(&bracket_words_guarded(w, u, depth), c);
    }
    out
}

/// The Lie bracket `[p, q]`, normalized.
pub fn bracket(p: &LiePoly, q: &LiePoly) -> LiePoly {
    let mut out = LiePoly::zero();
    for (u, a) in p {
        for (v, b) in q {
            out.add_scaled(&bracket_words_guarded(u, v, 0), &(a * b));
        }
    }
    out
}

/// Left-normed bracket of a list of polynomials.
pub fn bracket_all<'a, I: IntoIterator<Item = &'a LiePoly>>(items: I) -> LiePoly {
    let mut it = items.into_iter();
    let Some(first) = it.next() else {
        return LiePoly::zero();
    };
    it.fold(first.clone(), |acc, p| bracket(&acc, p))
}

/// The value of a bracket tree in the Hall basis.
pub fn normalize_tree(t: &Tree) -> LiePoly {
    match t {
        Tree::Letter(l) => LiePoly::letter(*l),
        Tree::Bracket(a, b) => bracket(&normalize_tree(a), &normalize_tree(b)),
    }
}

/// A linear combination of bracket trees, as produced by the parser.
pub type Expr = Vec<(Scalar, Tree)>;

/// The value of a linear combination of bracket trees in the Hall basis.
pub fn normalize(e: &Expr) -> LiePoly {
    let mut out = LiePoly::zero();
    for (c, t) in e {
        out.add_scaled(&normalize_tree(t), c);
    }
    out
}
