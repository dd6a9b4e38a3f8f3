//! The derivation `δ` with `δ(x) = 0`, `δ(y) = x`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num::BigInt;

use crate::error::Error;
use crate::hall::{HallWord, Letter};
use crate::poly::{bracket, LiePoly, Scalar};

/// Images of the generators. Only the standard derivation is exposed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationSpec {
    x_image: LiePoly,
    y_image: LiePoly,
}

impl DerivationSpec {
    pub fn standard() -> DerivationSpec {
        DerivationSpec {
            x_image: LiePoly::zero(),
            y_image: LiePoly::x(),
        }
    }

    pub fn image(&self, l: Letter) -> &LiePoly {
        match l {
            Letter::X => &self.x_image,
            Letter::Y => &self.y_image,
        }
    }

    /// `δ(x) = 0` and `δ²(y) = 0`.
    pub fn is_locally_nilpotent_on_generators(&self) -> bool {
        self.x_image.is_zero()
            && self
                .y_image
                .terms()
                .all(|(w, _)| w.as_letter() == Some(Letter::X))
    }
}

type DeltaCache = RwLock<HashMap<HallWord, Arc<LiePoly>>>;

static DELTAS: OnceLock<DeltaCache> = OnceLock::new();

/// `δ` of a Hall word by the Leibniz rule, memoized.
pub fn delta_word(w: &HallWord) -> Arc<LiePoly> {
    let cache = DELTAS.get_or_init(Default::default);
    if let Some(p) = cache.read().unwrap().get(w) {
        return p.clone();
    }
    let value = match w.factors() {
        None => match w.as_letter().unwrap() {
            Letter::X => LiePoly::zero(),
            Letter::Y => LiePoly::x(),
        },
        Some((u, v)) => {
            let du = delta_word(u);
            let dv = delta_word(v);
            let mut out = bracket(&du, &LiePoly::word(v.clone()));
            out += &bracket(&LiePoly::word(u.clone()), &dv);
            out
        }
    };
    cache
        .write()
        .unwrap()
        .entry(w.clone())
        .or_insert_with(|| Arc::new(value))
        .clone()
}

pub fn delta(p: &LiePoly) -> LiePoly {
    let mut out = LiePoly::zero();
    for (w, c) in p {
        out.add_scaled(&delta_word(w), c);
    }
    out
}

/// `δⁿ(p)`; `δ⁰` is the identity.
pub fn delta_power(p: &LiePoly, n: u32) -> LiePoly {
    let mut cur = p.clone();
    for _ in 0..n {
        if cur.is_zero() {
            break;
        }
        cur = delta(&cur);
    }
    cur
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1))
}

/// `δⁿ([A, B]) = Σ C(n,i) [δⁿ⁻ⁱ(A), δⁱ(B)]`, computed from the factors.
pub fn leibniz_expand(w: &HallWord, n: u32) -> Result<LiePoly, Error> {
    let (a, b) = w.factors().ok_or_else(|| Error::LeafInput(w.to_string()))?;
    let a = LiePoly::word(a.clone());
    let b = LiePoly::word(b.clone());
    let a_pows: Vec<LiePoly> = (0..=n).map(|i| delta_power(&a, i)).collect();
    let b_pows: Vec<LiePoly> = (0..=n).map(|i| delta_power(&b, i)).collect();
    let mut out = LiePoly::zero();
    for i in 0..=n {
        let term = bracket(&a_pows[(n - i) as usize], &b_pows[i as usize]);
        out.add_scaled(&term, &Scalar::from_integer(binomial(n, i)));
    }
    Ok(out)
}

/// The least `n >= 1` with `δⁿ(p) = 0`.
pub fn nilpotency_index(p: &LiePoly) -> Result<u32, Error> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial("nilpotency index"));
    }
    let mut cur = p.clone();
    let mut n = 0;
    while !cur.is_zero() {
        cur = delta(&cur);
        n += 1;
    }
    Ok(n)
}
