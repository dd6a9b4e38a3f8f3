//! Pseudodeterminants `U^{(m,k)}_{A,B} = [δᵐA, δᵏB] - [δᵏA, δᵐB]`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constants::coordinates;
use crate::derivation::{delta, delta_power, delta_word, nilpotency_index};
use crate::error::Error;
use crate::hall::{hall_basis, hall_basis_multidegree, HallWord, MultiDegree};
use crate::linalg::RowSpace;
use crate::poly::{bracket, ratio, LiePoly, Scalar};

/// The value of `U^{(m,k)}_{A,B}` for arbitrary polynomials.
pub fn pseudodet_value(a: &LiePoly, b: &LiePoly, m: u32, k: u32) -> LiePoly {
    let am = delta_power(a, m);
    let bk = delta_power(b, k);
    let ak = delta_power(a, k);
    let bm = delta_power(b, m);
    bracket(&am, &bk) - bracket(&ak, &bm)
}

/// A pseudodeterminant of two Hall words.
///
/// Stored with `m >= k`: `U^{(m,k)}_{A,B} = -U^{(k,m)}_{B,A}`, so a request
/// with `m < k` is kept as the swapped form with `negated` set. `value` is
/// always the value of the form that was requested.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PseudoDet {
    #[serde(rename = "A")]
    pub a: HallWord,
    #[serde(rename = "B")]
    pub b: HallWord,
    pub m: u32,
    pub k: u32,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub negated: bool,
    pub value: LiePoly,
}

impl PseudoDet {
    pub fn is_k0(&self) -> bool {
        self.k == 0
    }
}

impl fmt::Display for PseudoDet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.negated { "-" } else { "" };
        write!(
            f,
            "{sign}U^({},{})_{{{}, {}}} = {}",
            self.m, self.k, self.a, self.b, self.value
        )
    }
}

pub fn make_pseudodet(a: &HallWord, b: &HallWord, m: u32, k: u32) -> PseudoDet {
    let value = pseudodet_value(&a.clone().into(), &b.clone().into(), m, k);
    if m >= k {
        PseudoDet {
            a: a.clone(),
            b: b.clone(),
            m,
            k,
            negated: false,
            value,
        }
    } else {
        PseudoDet {
            a: b.clone(),
            b: a.clone(),
            m: k,
            k: m,
            negated: true,
            value,
        }
    }
}

/// `δ(U^{(m,k-1)}) = U^{(m,k)} + U^{(m+1,k-1)}`.
pub fn check_delta_split(a: &HallWord, b: &HallWord, m: u32, k: u32) -> bool {
    assert!(k >= 1, "k must be at least 1");
    let a: LiePoly = a.clone().into();
    let b: LiePoly = b.clone().into();
    let lhs = delta(&pseudodet_value(&a, &b, m, k - 1));
    let rhs = pseudodet_value(&a, &b, m, k) + pseudodet_value(&a, &b, m + 1, k - 1);
    lhs == rhs
}

/// One weighted pseudodeterminant `coeff * U^{(k,0)}_{A,B}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedTerm {
    pub a: HallWord,
    pub b: HallWord,
    pub coeff: Scalar,
}

/// Writes `[p, δᵏ(p)]` as a combination of degree `(k, 0)`
/// pseudodeterminants. For `p = Σ αᵢ Mᵢ` the weights are `-αᵢαⱼ` for
/// `i < j` and `-αᵢ²/2` on the diagonal.
pub fn decompose_bracket_power(p: &LiePoly, _k: u32) -> Result<Vec<WeightedTerm>, Error> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial("pseudodeterminant decomposition"));
    }
    let terms: Vec<(&HallWord, &Scalar)> = p.terms().collect();
    let half = ratio(1, 2);
    let mut out = Vec::new();
    for (i, (mi, ai)) in terms.iter().enumerate() {
        for (mj, aj) in &terms[i..] {
            let coeff = if mi == mj {
                -(&half * *ai * *ai)
            } else {
                -(*ai * *aj)
            };
            out.push(WeightedTerm {
                a: (*mi).clone(),
                b: (*mj).clone(),
                coeff,
            });
        }
    }
    Ok(out)
}

/// `Σ coeff · U^{(k,0)}_{A,B}` over the terms.
pub fn weighted_sum(terms: &[WeightedTerm], k: u32) -> LiePoly {
    let mut out = LiePoly::zero();
    for t in terms {
        let u = pseudodet_value(&t.a.clone().into(), &t.b.clone().into(), k, 0);
        out.add_scaled(&u, &t.coeff);
    }
    out
}

/// Which pseudodeterminant shapes to enumerate.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Shape {
    /// Every `(m, k)` with `m > k`.
    #[default]
    All,
    /// Only `(m, 0)`.
    K0Only,
}

impl std::str::FromStr for Shape {
    type Err = String;

    fn from_str(s: &str) -> Result<Shape, String> {
        match s {
            "all" => Ok(Shape::All),
            "k0-only" | "k0" => Ok(Shape::K0Only),
            _ => Err(format!("unknown shape `{s}`, expected `all` or `k0-only`")),
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Shape::All => "all",
            Shape::K0Only => "k0-only",
        })
    }
}

/// Nonzero constant pseudodeterminants of Hall words with
/// `deg A + deg B <= max_degree`, keeping only those that enlarge the span
/// of the ones found before them.
///
/// Candidates are visited by total degree, then `A`, then `B`, then `(m, k)`.
/// Powers at or beyond the nilpotency index of both words give zero, so
/// `m` stops there; `m = k` always gives zero and is skipped.
pub fn enumerate_constant_pseudodets(
    max_degree: u32,
    shape: Shape,
) -> Result<Vec<PseudoDet>, Error> {
    let mut words = Vec::new();
    for d in 1..max_degree {
        words.extend(hall_basis(d)?.iter().cloned());
    }
    let nil: BTreeMap<HallWord, u32> = words
        .iter()
        .map(|w| (w.clone(), nilpotency_index(&w.clone().into()).unwrap()))
        .collect();
    let pairs: Vec<(&HallWord, &HallWord)> = words
        .iter()
        .flat_map(|a| words.iter().map(move |b| (a, b)))
        .filter(|(a, b)| a.degree() + b.degree() <= max_degree)
        .collect();

    let mut found: Vec<Vec<PseudoDet>> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let top = nil[a].max(nil[b]);
            let mut out = Vec::new();
            for m in 1..top {
                let ks = match shape {
                    Shape::All => 0..m,
                    Shape::K0Only => 0..1,
                };
                for k in ks {
                    let u = make_pseudodet(a, b, m, k);
                    if !u.value.is_zero() && delta(&u.value).is_zero() {
                        out.push(u);
                    }
                }
            }
            out
        })
        .collect();

    let mut order: Vec<usize> = (0..pairs.len()).collect();
    order.sort_by(|&i, &j| {
        let (a1, b1) = pairs[i];
        let (a2, b2) = pairs[j];
        (a1.degree() + b1.degree())
            .cmp(&(a2.degree() + b2.degree()))
            .then_with(|| a1.cmp(a2))
            .then_with(|| b1.cmp(b2))
    });

    let mut spans: BTreeMap<MultiDegree, (Vec<HallWord>, RowSpace)> = BTreeMap::new();
    let mut out = Vec::new();
    for i in order {
        for u in std::mem::take(&mut found[i]) {
            let md = u
                .value
                .multidegree()
                .expect("pseudodeterminants are homogeneous");
            let (basis, span) = match spans.entry(md) {
                Entry::Occupied(e) => e.into_mut(),
                Entry::Vacant(e) => {
                    let basis = hall_basis_multidegree(md)?;
                    let n = basis.len();
                    e.insert((basis, RowSpace::new(n)))
                }
            };
            if span.insert(&coordinates(&u.value, basis)?)? {
                out.push(u);
            }
        }
    }
    Ok(out)
}

/// How a constant Hall monomial `[A, B]` relates to pseudodeterminants.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum MonomialClass {
    /// `δA = δB = 0`.
    BothFactorsConstant,
    /// One factor `C` is not constant and `δC = β·(other factor)`, so
    /// `M = coeff · U^{(1,0)}_{C,C}`.
    OneFactorConstant {
        nonconstant: HallWord,
        #[serde(with = "crate::parse::scalar_str")]
        beta: Scalar,
        #[serde(with = "crate::parse::scalar_str")]
        coeff: Scalar,
    },
    /// Neither factor is constant; `δ^{r-1}A = α δ^{s-1}B`.
    NeitherConstant {
        #[serde(with = "crate::parse::scalar_str")]
        alpha: Scalar,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialAnalysis {
    pub monomial: HallWord,
    #[serde(rename = "A")]
    pub a: HallWord,
    #[serde(rename = "B")]
    pub b: HallWord,
    /// Least `r` with `δʳA = 0`.
    pub r: u32,
    /// Least `s` with `δˢB = 0`.
    pub s: u32,
    pub class: MonomialClass,
}

impl MonomialAnalysis {
    pub fn class_name(&self) -> &'static str {
        match self.class {
            MonomialClass::BothFactorsConstant => "both-factors-constant",
            MonomialClass::OneFactorConstant { .. } => "one-factor-constant",
            MonomialClass::NeitherConstant { .. } => "neither-constant",
        }
    }
}

/// Classifies a constant Hall monomial `M = [A, B]`, verifying the relation
/// that its class asserts. A failed verification panics: it would mean the
/// arithmetic is wrong, not the input.
pub fn analyze_constant_monomial(m: &HallWord) -> Result<MonomialAnalysis, Error> {
    let (a, b) = m.factors().ok_or_else(|| Error::LeafInput(m.to_string()))?;
    let mpoly: LiePoly = m.clone().into();
    if !delta_word(m).is_zero() {
        return Err(Error::NotConstant(m.to_string()));
    }
    let ap: LiePoly = a.clone().into();
    let bp: LiePoly = b.clone().into();
    let r = nilpotency_index(&ap)?;
    let s = nilpotency_index(&bp)?;
    let class = match (r, s) {
        (1, 1) => MonomialClass::BothFactorsConstant,
        (_, 1) | (1, _) => {
            // δ(M) = [δA, B] + [A, δB]; with one side constant the other
            // factor's image is proportional to the constant one.
            let (c, other, sign) = if s == 1 {
                (a, &bp, -Scalar::one())
            } else {
                (b, &ap, Scalar::one())
            };
            let cpoly: LiePoly = c.clone().into();
            let dc = delta(&cpoly);
            let beta = dc
                .ratio_to(other)
                .filter(|x| !x.is_zero())
                .expect("image of the non-constant factor is proportional to the other factor");
            // B constant: M = [A, B] = β⁻¹[A, δA] = -(β⁻¹/2) U_{A,A}.
            // A constant: M = [A, B] = β⁻¹[δB, B] = (β⁻¹/2) U_{B,B}.
            let coeff = sign * beta.recip() * ratio(1, 2);
            let u = pseudodet_value(&cpoly, &cpoly, 1, 0);
            assert_eq!(
                u.scale(&coeff),
                mpoly,
                "pseudodeterminant identity failed for {m}"
            );
            MonomialClass::OneFactorConstant {
                nonconstant: c.clone(),
                beta,
                coeff,
            }
        }
        _ => {
            let lhs = delta_power(&ap, r - 1);
            let rhs = delta_power(&bp, s - 1);
            let alpha = lhs
                .ratio_to(&rhs)
                .filter(|x| !x.is_zero())
                .expect("top derivatives of the factors are proportional");
            assert_eq!(rhs.scale(&alpha), lhs);
            MonomialClass::NeitherConstant { alpha }
        }
    };
    Ok(MonomialAnalysis {
        monomial: m.clone(),
        a: a.clone(),
        b: b.clone(),
        r,
        s,
        class,
    })
}

/// Analyses of every constant Hall monomial of degree `2..=max_degree`.
pub fn scan_constant_monomials(max_degree: u32) -> Result<Vec<MonomialAnalysis>, Error> {
    let mut out = Vec::new();
    for d in 2..=max_degree {
        for w in hall_basis(d)?.iter() {
            if delta_word(w).is_zero() {
                out.push(analyze_constant_monomial(w)?);
            }
        }
    }
    Ok(out)
}
