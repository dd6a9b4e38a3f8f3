//! Helpers shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;

use freelie::poly::scalar;
use freelie::{hall_basis, HallWord, Letter, LiePoly, Scalar, Tree};
use num::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Element of the free associative algebra on x, y.
pub type Assoc = HashMap<Vec<Letter>, Scalar>;

fn add_into(out: &mut Assoc, word: Vec<Letter>, c: Scalar) {
    let e = out.entry(word).or_insert_with(Scalar::zero);
    *e += c;
    if e.is_zero() {
        // Keep the map canonical so equality is structural.
        out.retain(|_, v| !v.is_zero());
    }
}

fn assoc_mul(a: &Assoc, b: &Assoc) -> Assoc {
    let mut out = Assoc::new();
    for (u, cu) in a {
        for (v, cv) in b {
            let mut w = u.clone();
            w.extend_from_slice(v);
            add_into(&mut out, w, cu * cv);
        }
    }
    out
}

fn assoc_sub(a: &Assoc, b: &Assoc) -> Assoc {
    let mut out = a.clone();
    for (w, c) in b {
        add_into(&mut out, w.clone(), -c.clone());
    }
    out
}

/// Expands a bracket tree with `[a, b] = ab - ba`. The free Lie algebra
/// embeds in the free associative algebra, so this decides equality
/// without touching the Hall basis.
pub fn assoc_tree(t: &Tree) -> Assoc {
    match t {
        Tree::Letter(l) => Assoc::from([(vec![*l], scalar(1))]),
        Tree::Bracket(a, b) => {
            let a = assoc_tree(a);
            let b = assoc_tree(b);
            assoc_sub(&assoc_mul(&a, &b), &assoc_mul(&b, &a))
        }
    }
}

pub fn assoc_poly(p: &LiePoly) -> Assoc {
    let mut out = Assoc::new();
    for (w, c) in p.terms() {
        for (u, cu) in assoc_tree(&w.to_tree()) {
            add_into(&mut out, u, cu * c);
        }
    }
    out
}

/// Applies the derivation x -> 0, y -> x letter by letter.
pub fn assoc_delta(a: &Assoc) -> Assoc {
    let mut out = Assoc::new();
    for (w, c) in a {
        for (i, l) in w.iter().enumerate() {
            if *l == Letter::Y {
                let mut v = w.clone();
                v[i] = Letter::X;
                add_into(&mut out, v, c.clone());
            }
        }
    }
    out
}

pub fn random_letter(rng: &mut ChaCha8Rng) -> Letter {
    if rng.gen_bool(0.5) {
        Letter::X
    } else {
        Letter::Y
    }
}

/// A uniformly shaped random bracket tree with `degree` leaves.
pub fn random_tree(rng: &mut ChaCha8Rng, degree: u32) -> Tree {
    if degree == 1 {
        return Tree::letter(random_letter(rng));
    }
    let left = rng.gen_range(1..degree);
    Tree::bracket(random_tree(rng, left), random_tree(rng, degree - left))
}

pub fn random_word(rng: &mut ChaCha8Rng, max_degree: u32) -> HallWord {
    let d = rng.gen_range(1..=max_degree);
    hall_basis(d).unwrap().choose(rng).unwrap().clone()
}

/// A random nonzero polynomial of degree at most `max_degree` with up to
/// `max_terms` terms and small integer coefficients.
pub fn random_poly(rng: &mut ChaCha8Rng, max_degree: u32, max_terms: usize) -> LiePoly {
    loop {
        let n = rng.gen_range(1..=max_terms);
        let mut p = LiePoly::zero();
        for _ in 0..n {
            let c = rng.gen_range(-3i64..=3);
            p.add_term(random_word(rng, max_degree), scalar(c));
        }
        if !p.is_zero() {
            return p;
        }
    }
}

/// A random nonzero polynomial all of whose terms share one degree.
pub fn random_homogeneous(rng: &mut ChaCha8Rng, degree: u32, max_terms: usize) -> LiePoly {
    loop {
        let basis = hall_basis(degree).unwrap();
        let mut p = LiePoly::zero();
        for _ in 0..rng.gen_range(1..=max_terms) {
            let c = rng.gen_range(-3i64..=3);
            p.add_term(basis.choose(rng).unwrap().clone(), scalar(c));
        }
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn lie(s: &str) -> LiePoly {
    freelie::parse(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

/// `[y, x, ..., x]` with `n` copies of x, as a tree.
pub fn y_then_xs(n: u32) -> Tree {
    Tree::left_normed(
        std::iter::once(Tree::letter(Letter::Y)).chain((0..n).map(|_| Tree::letter(Letter::X))),
    )
}
