//! Hall words of the free Lie algebra on two letters.
//!
//! Words are ordered degree first, then by foliage (the word left after
//! erasing brackets) lexicographically with `x < y`, and finally by a
//! recursive comparison of the left and then the right factor. Any order
//! that is compatible with degree satisfies `[u, v] > v`, so the usual
//! Marshall Hall construction applies: a bracket `[u, v]` of Hall words is
//! itself a Hall word when `u > v` and, if `u = [u1, u2]`, also `u2 <= v`.

use std::cmp::Ordering;
use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::Add;
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Largest degree a Hall word may have; foliage is packed into a `u64`.
pub const MAX_DEGREE: u32 = 64;

/// One of the two free generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Letter {
    #[serde(rename = "x")]
    X,
    #[serde(rename = "y")]
    Y,
}

impl Letter {
    pub const ALL: [Letter; 2] = [Letter::X, Letter::Y];

    pub fn symbol(self) -> char {
        match self {
            Letter::X => 'x',
            Letter::Y => 'y',
        }
    }

    pub fn from_symbol(c: char) -> Option<Letter> {
        match c {
            'x' => Some(Letter::X),
            'y' => Some(Letter::Y),
            _ => None,
        }
    }

    fn bit(self) -> u64 {
        match self {
            Letter::X => 0,
            Letter::Y => 1,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// Bidegree `(deg_x, deg_y)` of a homogeneous element.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
pub struct MultiDegree {
    pub deg_x: u32,
    pub deg_y: u32,
}

impl MultiDegree {
    pub const fn new(deg_x: u32, deg_y: u32) -> Self {
        MultiDegree { deg_x, deg_y }
    }

    pub const fn total(self) -> u32 {
        self.deg_x + self.deg_y
    }

    pub fn of_letter(letter: Letter) -> Self {
        match letter {
            Letter::X => MultiDegree::new(1, 0),
            Letter::Y => MultiDegree::new(0, 1),
        }
    }

    /// Where the derivation sends this component: one `y` becomes an `x`.
    pub fn delta_target(self) -> Option<MultiDegree> {
        (self.deg_y > 0).then(|| MultiDegree::new(self.deg_x + 1, self.deg_y - 1))
    }

    /// All multidegrees of total degree `1..=max_total`, ordered by total
    /// degree and then by `deg_x`.
    pub fn up_to(max_total: u32) -> Vec<MultiDegree> {
        (1..=max_total)
            .flat_map(|n| (0..=n).map(move |a| MultiDegree::new(a, n - a)))
            .collect()
    }
}

impl Add for MultiDegree {
    type Output = MultiDegree;

    fn add(self, rhs: MultiDegree) -> MultiDegree {
        MultiDegree::new(self.deg_x + rhs.deg_x, self.deg_y + rhs.deg_y)
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.deg_x, self.deg_y)
    }
}

impl std::str::FromStr for MultiDegree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::InvalidMultiDegree(s.to_string());
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
        let (a, b) = trimmed.split_once(',').ok_or_else(bad)?;
        let a = a.trim().parse().map_err(|_| bad())?;
        let b = b.trim().parse().map_err(|_| bad())?;
        Ok(MultiDegree::new(a, b))
    }
}

/// An arbitrary bracket monomial over `{x, y}`, basic or not.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Tree {
    Letter(Letter),
    Bracket(Box<Tree>, Box<Tree>),
}

impl Tree {
    pub fn letter(letter: Letter) -> Tree {
        Tree::Letter(letter)
    }

    pub fn bracket(left: Tree, right: Tree) -> Tree {
        Tree::Bracket(Box::new(left), Box::new(right))
    }

    /// `[a1, a2, ..., an]` as `[[[a1, a2], ...], an]`.
    ///
    /// Panics on an empty list.
    pub fn left_normed<I: IntoIterator<Item = Tree>>(items: I) -> Tree {
        let mut it = items.into_iter();
        let first = it.next().expect("left-normed bracket of no elements");
        it.fold(first, Tree::bracket)
    }

    pub fn degree(&self) -> u32 {
        match self {
            Tree::Letter(_) => 1,
            Tree::Bracket(l, r) => l.degree() + r.degree(),
        }
    }

    pub fn multidegree(&self) -> MultiDegree {
        match self {
            Tree::Letter(l) => MultiDegree::of_letter(*l),
            Tree::Bracket(l, r) => l.multidegree() + r.multidegree(),
        }
    }

    /// Converts to a Hall word if every node satisfies the basic-word axioms.
    pub fn to_hall(&self) -> Option<HallWord> {
        match self {
            Tree::Letter(l) => Some(HallWord::letter(*l)),
            Tree::Bracket(l, r) => HallWord::bracket(&l.to_hall()?, &r.to_hall()?),
        }
    }
}

/// Whether a bracket tree is a basic (Hall) word.
pub fn is_basic(tree: &Tree) -> bool {
    tree.to_hall().is_some()
}

/// A basic word. Cheap to clone; degree, multidegree and foliage are cached.
#[derive(Clone)]
pub struct HallWord(Arc<Node>);

struct Node {
    kind: Kind,
    degree: u32,
    multidegree: MultiDegree,
    /// Letters as bits, first letter most significant, `x = 0`, `y = 1`.
    foliage: u64,
    hash: u64,
}

enum Kind {
    Letter(Letter),
    Bracket(HallWord, HallWord),
}

impl HallWord {
    pub fn letter(letter: Letter) -> HallWord {
        let mut h = DefaultHasher::new();
        (0u8, letter).hash(&mut h);
        HallWord(Arc::new(Node {
            kind: Kind::Letter(letter),
            degree: 1,
            multidegree: MultiDegree::of_letter(letter),
            foliage: letter.bit(),
            hash: h.finish(),
        }))
    }

    pub fn x() -> HallWord {
        HallWord::letter(Letter::X)
    }

    pub fn y() -> HallWord {
        HallWord::letter(Letter::Y)
    }

    /// `[u, v]` if it is a basic word, `None` otherwise.
    pub fn bracket(u: &HallWord, v: &HallWord) -> Option<HallWord> {
        Self::is_basic_pair(u, v).then(|| Self::bracket_unchecked(u, v))
    }

    /// The Hall axioms for the pair `(u, v)` of Hall words.
    pub fn is_basic_pair(u: &HallWord, v: &HallWord) -> bool {
        if u <= v {
            return false;
        }
        match u.factors() {
            None => true,
            Some((_, u2)) => u2 <= v,
        }
    }

    pub(crate) fn bracket_unchecked(u: &HallWord, v: &HallWord) -> HallWord {
        let degree = u.degree() + v.degree();
        assert!(
            degree <= MAX_DEGREE,
            "Hall words are limited to degree {MAX_DEGREE}"
        );
        let mut h = DefaultHasher::new();
        (1u8, u.0.hash, v.0.hash).hash(&mut h);
        HallWord(Arc::new(Node {
            degree,
            multidegree: u.multidegree() + v.multidegree(),
            foliage: (u.0.foliage << v.degree()) | v.0.foliage,
            hash: h.finish(),
            kind: Kind::Bracket(u.clone(), v.clone()),
        }))
    }

    pub fn degree(&self) -> u32 {
        self.0.degree
    }

    pub fn multidegree(&self) -> MultiDegree {
        self.0.multidegree
    }

    pub fn as_letter(&self) -> Option<Letter> {
        match &self.0.kind {
            Kind::Letter(l) => Some(*l),
            Kind::Bracket(..) => None,
        }
    }

    pub fn is_letter(&self) -> bool {
        self.as_letter().is_some()
    }

    /// `(left, right)` for a bracket, `None` for a letter.
    pub fn factors(&self) -> Option<(&HallWord, &HallWord)> {
        match &self.0.kind {
            Kind::Letter(_) => None,
            Kind::Bracket(l, r) => Some((l, r)),
        }
    }

    /// The bracket-erased word, e.g. `"yxxy"`.
    pub fn foliage(&self) -> String {
        (0..self.degree())
            .rev()
            .map(|i| {
                if self.0.foliage >> i & 1 == 1 {
                    'y'
                } else {
                    'x'
                }
            })
            .collect()
    }

    pub fn to_tree(&self) -> Tree {
        match &self.0.kind {
            Kind::Letter(l) => Tree::Letter(*l),
            Kind::Bracket(l, r) => Tree::bracket(l.to_tree(), r.to_tree()),
        }
    }

    /// The elements of the left-normed form `[a1, ..., an]`: walk down the
    /// left spine, collecting right factors.
    pub(crate) fn left_normed_parts(&self) -> Vec<&HallWord> {
        let mut parts = Vec::new();
        let mut cur = self;
        while let Some((l, r)) = cur.factors() {
            parts.push(r);
            cur = l;
        }
        parts.push(cur);
        parts.reverse();
        parts
    }
}

/// The total order on Hall words: degree, foliage, then factors.
pub fn hall_compare(a: &HallWord, b: &HallWord) -> Ordering {
    if Arc::ptr_eq(&a.0, &b.0) {
        return Ordering::Equal;
    }
    a.degree()
        .cmp(&b.degree())
        .then(a.0.foliage.cmp(&b.0.foliage))
        .then_with(|| match (&a.0.kind, &b.0.kind) {
            (Kind::Letter(x), Kind::Letter(y)) => x.cmp(y),
            (Kind::Letter(_), Kind::Bracket(..)) => Ordering::Less,
            (Kind::Bracket(..), Kind::Letter(_)) => Ordering::Greater,
            (Kind::Bracket(l1, r1), Kind::Bracket(l2, r2)) => {
                hall_compare(l1, l2).then_with(|| hall_compare(r1, r2))
            }
        })
}

impl PartialEq for HallWord {
    fn eq(&self, other: &Self) -> bool {
        self.0.hash == other.0.hash && hall_compare(self, other) == Ordering::Equal
    }
}

impl Eq for HallWord {}

impl PartialOrd for HallWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HallWord {
    fn cmp(&self, other: &Self) -> Ordering {
        hall_compare(self, other)
    }
}

impl Hash for HallWord {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

impl fmt::Display for HallWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(l) = self.as_letter() {
            return write!(f, "{l}");
        }
        f.write_str("[")?;
        for (i, part) in self.left_normed_parts().into_iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{part}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for HallWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HallWord({self})")
    }
}

// Bases for degrees 1..=len, each sorted by `hall_compare`. Grown under the
// write lock, read-only afterwards.
static BASES: OnceLock<RwLock<Vec<Arc<Vec<HallWord>>>>> = OnceLock::new();

fn bases() -> &'static RwLock<Vec<Arc<Vec<HallWord>>>> {
    BASES.get_or_init(|| RwLock::new(Vec::new()))
}

/// All Hall words of degree exactly `degree`, in increasing order.
pub fn hall_basis(degree: u32) -> Result<Arc<Vec<HallWord>>, Error> {
    if degree == 0 {
        return Err(Error::ZeroDegree);
    }
    if degree > MAX_DEGREE {
        return Err(Error::DegreeTooLarge(degree));
    }
    let d = degree as usize;
    if let Some(b) = bases().read().unwrap().get(d - 1) {
        return Ok(b.clone());
    }
    let mut table = bases().write().unwrap();
    while table.len() < d {
        let n = table.len() + 1;
        let mut words = if n == 1 {
            Letter::ALL.iter().map(|&l| HallWord::letter(l)).collect()
        } else {
            let mut words = Vec::new();
            for du in 1..n {
                for u in table[du - 1].iter() {
                    for v in table[n - du - 1].iter() {
                        if HallWord::is_basic_pair(u, v) {
                            words.push(HallWord::bracket_unchecked(u, v));
                        }
                    }
                }
            }
            words
        };
        words.sort();
        table.push(Arc::new(words));
    }
    Ok(table[d - 1].clone())
}

/// The Hall words of a single bidegree, in increasing order.
pub fn hall_basis_multidegree(md: MultiDegree) -> Result<Vec<HallWord>, Error> {
    Ok(hall_basis(md.total())?
        .iter()
        .filter(|w| w.multidegree() == md)
        .cloned()
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ln(s: &str) -> HallWord {
        crate::parse::parse_word(s).unwrap()
    }

    #[test]
    fn letters_are_ordered() {
        assert_eq!(hall_compare(&HallWord::x(), &HallWord::y()), Ordering::Less);
        assert_eq!(hall_compare(&ln("[y,x]"), &ln("[y,x]")), Ordering::Equal);
        assert_eq!(hall_compare(&ln("[y,x,x]"), &ln("[y,x,y]")), Ordering::Less);
    }

    #[test]
    fn small_bases() {
        let fmt = |d| {
            hall_basis(d)
                .unwrap()
                .iter()
                .map(|w| w.to_string())
                .collect::<Vec<_>>()
        };
        assert_eq!(fmt(1), ["x", "y"]);
        assert_eq!(fmt(2), ["[y,x]"]);
        assert_eq!(fmt(3), ["[y,x,x]", "[y,x,y]"]);
        assert_eq!(fmt(4), ["[y,x,x,x]", "[y,x,x,y]", "[y,x,y,y]"]);
        assert!(matches!(hall_basis(0), Err(Error::ZeroDegree)));
    }

    #[test]
    fn basis_by_multidegree() {
        let fmt = |a, b| {
            hall_basis_multidegree(MultiDegree::new(a, b))
                .unwrap()
                .iter()
                .map(|w| w.to_string())
                .collect::<Vec<_>>()
        };
        assert_eq!(fmt(2, 1), ["[y,x,x]"]);
        assert_eq!(fmt(3, 2), ["[y,x,x,x,y]", "[y,x,x,[y,x]]"]);
        assert!(fmt(0, 2).is_empty());
        assert!(hall_basis_multidegree(MultiDegree::new(0, 0)).is_err());
    }

    #[test]
    fn basic_axioms() {
        let x = || Tree::letter(Letter::X);
        let y = || Tree::letter(Letter::Y);
        assert!(is_basic(&Tree::bracket(y(), x())));
        assert!(!is_basic(&Tree::bracket(x(), y())));
        assert!(!is_basic(&Tree::bracket(x(), x())));
        let yxy = Tree::left_normed([y(), x(), y()]);
        assert!(is_basic(&yxy));
        assert!(!is_basic(&Tree::bracket(yxy, x())));
    }

    #[test]
    fn foliage_and_degrees() {
        let w = ln("[[y,x,y],[y,x,x]]");
        assert_eq!(w.foliage(), "yxyyxx");
        assert_eq!(w.degree(), 6);
        assert_eq!(w.multidegree(), MultiDegree::new(3, 3));
    }

    #[test]
    fn order_is_total_on_small_degrees() {
        for d in 1..=8 {
            let b = hall_basis(d).unwrap();
            for (i, u) in b.iter().enumerate() {
                for (j, v) in b.iter().enumerate() {
                    assert_eq!(u.cmp(v), i.cmp(&j), "{u} vs {v}");
                    assert_eq!(u.cmp(v), v.cmp(u).reverse());
                }
            }
        }
    }

    #[test]
    fn multidegree_parse() {
        assert_eq!(
            "3,2".parse::<MultiDegree>().unwrap(),
            MultiDegree::new(3, 2)
        );
        assert_eq!(
            "(4, 3)".parse::<MultiDegree>().unwrap(),
            MultiDegree::new(4, 3)
        );
        assert!("4".parse::<MultiDegree>().is_err());
    }
}
