//! Text and JSON forms of Lie polynomials.
//!
//! Grammar (whitespace is ignored between tokens):
//!
//! ```text
//! expression := ['-'] term (('+' | '-') term)* | '0'
//! term       := rational '*' monomial | monomial
//! rational   := ['-'] digits ['/' digits]
//! monomial   := letter | '[' element (',' element)+ ']'
//! element    := letter | monomial
//! ```
//!
//! `[e1, e2, ..., en]` with more than two elements is the left-normed
//! product `[[[e1, e2], ...], en]`.

use num::{BigInt, BigRational, One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, ParseError};
use crate::hall::{HallWord, Letter, Tree};
use crate::poly::{normalize, Expr, LiePoly, Scalar};

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek_raw() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek_raw(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_raw()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn error(&self, msg: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn expect(&mut self, want: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(c) if c == want => {
                self.bump();
                Ok(())
            }
            Some(c) => Err(self.error(format!("expected `{want}`, found `{c}`"))),
            None => Err(self.error(format!("expected `{want}`, found end of input"))),
        }
    }

    fn expression(&mut self) -> Result<Expr, ParseError> {
        let mut out = Vec::new();
        if self.peek() == Some('0') {
            let save = self.pos;
            self.bump();
            if self.peek().is_none() {
                return Ok(out);
            }
            self.pos = save;
        }
        let mut sign = Scalar::one();
        if self.peek() == Some('-') {
            self.bump();
            sign = -sign;
        }
        loop {
            let (c, t) = self.term()?;
            out.push((sign * c, t));
            match self.peek() {
                None => return Ok(out),
                Some('+') => sign = Scalar::one(),
                Some('-') => sign = -Scalar::one(),
                Some(c) => return Err(self.error(format!("expected `+` or `-`, found `{c}`"))),
            }
            self.bump();
        }
    }

    fn term(&mut self) -> Result<(Scalar, Tree), ParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() || c == '-' => {
                let c = self.rational()?;
                self.expect('*')?;
                Ok((c, self.monomial()?))
            }
            _ => Ok((Scalar::one(), self.monomial()?)),
        }
    }

    fn rational(&mut self) -> Result<Scalar, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let mut end = start;
        let bytes = self.src.as_bytes();
        if bytes.get(end) == Some(&b'-') {
            end += 1;
        }
        while end < bytes.len() && (bytes[end].is_ascii_digit() || bytes[end] == b'/') {
            end += 1;
        }
        let text = &self.src[start..end];
        self.pos = end;
        parse_rational(text).ok_or_else(|| ParseError::Rational {
            pos: start,
            text: text.to_string(),
        })
    }

    fn monomial(&mut self) -> Result<Tree, ParseError> {
        let pos = {
            self.skip_ws();
            self.pos
        };
        match self.bump() {
            Some('[') => {
                let mut items = vec![self.monomial()?];
                while self.peek() == Some(',') {
                    self.bump();
                    items.push(self.monomial()?);
                }
                self.expect(']')?;
                if items.len() < 2 {
                    return Err(self.error("a bracket needs at least two elements"));
                }
                Ok(Tree::left_normed(items))
            }
            Some(c) if c.is_alphabetic() => Letter::from_symbol(c)
                .map(Tree::Letter)
                .ok_or(ParseError::UnknownLetter { pos, letter: c }),
            Some(c) => Err(ParseError::Syntax {
                pos,
                msg: format!("expected a letter or `[`, found `{c}`"),
            }),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

/// Parses `p`, `-p`, `p/q` or `-p/q` with a nonzero denominator.
pub fn parse_rational(text: &str) -> Option<Scalar> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    let unsigned = num.strip_prefix('-').unwrap_or(num);
    if !digits(unsigned) || !digits(den) {
        return None;
    }
    let n: BigInt = num.parse().ok()?;
    let d: BigInt = den.parse().ok()?;
    (!d.is_zero()).then(|| BigRational::new(n, d))
}

/// Reads an expression into bracket trees without normalizing.
pub fn parse_expr(s: &str) -> Result<Expr, ParseError> {
    let mut p = Parser::new(s);
    let e = p.expression()?;
    if let Some(c) = p.peek() {
        return Err(p.error(format!("unexpected `{c}`")));
    }
    Ok(e)
}

/// Reads an expression and rewrites it into the Hall basis.
pub fn parse(s: &str) -> Result<LiePoly, ParseError> {
    Ok(normalize(&parse_expr(s)?))
}

/// Reads a single basic word, written exactly as a Hall word.
pub fn parse_word(s: &str) -> Result<HallWord, Error> {
    let e = parse_expr(s)?;
    match e.as_slice() {
        [(c, t)] if c.is_one() => t
            .to_hall()
            .ok_or_else(|| Error::NotAHallWord(s.to_string())),
        _ => Err(Error::NotAHallWord(s.to_string())),
    }
}

/// Inverse of [`parse`].
pub fn format(p: &LiePoly) -> String {
    p.to_string()
}

/// Serde adapter writing a [`Scalar`] as a `"p/q"` string.
pub mod scalar_str {
    use super::*;

    pub fn serialize<S: Serializer>(c: &Scalar, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(c)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Scalar, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).ok_or_else(|| D::Error::custom(format!("bad rational `{text}`")))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum TreeRepr {
    Letter(Letter),
    Pair(Box<TreeRepr>, Box<TreeRepr>),
}

impl TreeRepr {
    fn of_word(w: &HallWord) -> TreeRepr {
        match w.factors() {
            None => TreeRepr::Letter(w.as_letter().unwrap()),
            Some((l, r)) => TreeRepr::Pair(
                Box::new(TreeRepr::of_word(l)),
                Box::new(TreeRepr::of_word(r)),
            ),
        }
    }

    fn into_tree(self) -> Tree {
        match self {
            TreeRepr::Letter(l) => Tree::Letter(l),
            TreeRepr::Pair(l, r) => Tree::bracket(l.into_tree(), r.into_tree()),
        }
    }
}

impl Serialize for HallWord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        TreeRepr::of_word(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for HallWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let t = TreeRepr::deserialize(d)?.into_tree();
        t.to_hall()
            .ok_or_else(|| D::Error::custom("bracket tree is not a Hall word"))
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    coeff: String,
    word: TreeRepr,
}

impl Serialize for LiePoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<TermRepr> = self
            .terms()
            .map(|(w, c)| TermRepr {
                coeff: c.to_string(),
                word: TreeRepr::of_word(w),
            })
            .collect();
        terms.serialize(s)
    }
}

/// Accepts any bracket trees, not only Hall words, and normalizes them.
impl<'de> Deserialize<'de> for LiePoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let terms = Vec::<TermRepr>::deserialize(d)?;
        let mut expr = Vec::with_capacity(terms.len());
        for t in terms {
            let c = parse_rational(&t.coeff)
                .ok_or_else(|| D::Error::custom(format!("bad coefficient `{}`", t.coeff)))?;
            expr.push((c, t.word.into_tree()));
        }
        Ok(normalize(&expr))
    }
}
