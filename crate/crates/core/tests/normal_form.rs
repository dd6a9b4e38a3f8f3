mod common;

use common::*;
use freelie::{
    bracket, hall_basis, hall_compare, is_basic, normalize, normalize_tree, poly::scalar,
    MultiDegree, Tree,
};
use proptest::prelude::*;
use std::cmp::Ordering;

fn tree_strategy(max_degree: u32) -> impl Strategy<Value = Tree> {
    let leaf = prop_oneof![
        Just(Tree::letter(freelie::Letter::X)),
        Just(Tree::letter(freelie::Letter::Y))
    ];
    leaf.prop_recursive(max_degree, max_degree, 2, |inner| {
        (inner.clone(), inner).prop_map(|(a, b)| Tree::bracket(a, b))
    })
    .prop_filter("degree bound", move |t| t.degree() <= max_degree)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn normal_form_agrees_with_associative_expansion(t in tree_strategy(8)) {
        let p = normalize_tree(&t);
        prop_assert_eq!(assoc_poly(&p), assoc_tree(&t));
    }

    #[test]
    fn normal_form_is_homogeneous_in_the_tree_bidegree(t in tree_strategy(8)) {
        let p = normalize_tree(&t);
        if !p.is_zero() {
            prop_assert_eq!(p.multidegree(), Some(t.multidegree()));
        }
    }

    #[test]
    fn parsing_a_printed_polynomial_gives_it_back(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = random_poly(&mut r, 7, 5);
        prop_assert_eq!(lie(&p.to_string()), p);
    }
}

#[test]
fn seeded_trees_up_to_degree_eight_match_the_oracle() {
    let mut r = rng(11);
    for d in 1..=8 {
        for _ in 0..40 {
            let t = random_tree(&mut r, d);
            assert_eq!(assoc_poly(&normalize_tree(&t)), assoc_tree(&t), "{t:?}");
        }
    }
}

#[test]
fn hall_words_normalize_to_themselves() {
    for d in 1..=8 {
        for w in hall_basis(d).unwrap().iter() {
            assert!(is_basic(&w.to_tree()));
            assert_eq!(normalize_tree(&w.to_tree()), w.clone().into());
        }
    }
}

#[test]
fn antisymmetry_and_jacobi_on_random_triples() {
    let mut r = rng(500);
    for _ in 0..500 {
        let a = random_poly(&mut r, 5, 3);
        let b = random_poly(&mut r, 5, 3);
        let c = random_poly(&mut r, 5, 3);
        assert_eq!(bracket(&a, &b), -bracket(&b, &a));
        assert!(bracket(&a, &a).is_zero());
        let jacobi = bracket(&a, &bracket(&b, &c))
            + bracket(&b, &bracket(&c, &a))
            + bracket(&c, &bracket(&a, &b));
        assert!(jacobi.is_zero(), "Jacobi fails for {a}, {b}, {c}");
    }
}

#[test]
fn bracket_is_bilinear() {
    let mut r = rng(7);
    for _ in 0..100 {
        let a = random_poly(&mut r, 4, 3);
        let b = random_poly(&mut r, 4, 3);
        let c = random_poly(&mut r, 4, 3);
        let two = scalar(2);
        assert_eq!(bracket(&(&a + &b), &c), bracket(&a, &c) + bracket(&b, &c));
        assert_eq!(bracket(&(&two * &a), &c), &two * &bracket(&a, &c));
    }
}

#[test]
fn three_term_rewriting_for_small_hall_words() {
    // normalize([a,b,c]) = normalize([a,c,b]) - normalize([a,[c,b]])
    let words: Vec<_> = (1..=3)
        .flat_map(|d| hall_basis(d).unwrap().to_vec())
        .collect();
    for a in &words {
        for b in &words {
            for c in &words {
                let (ta, tb, tc) = (a.to_tree(), b.to_tree(), c.to_tree());
                let abc = Tree::left_normed([ta.clone(), tb.clone(), tc.clone()]);
                let acb = Tree::left_normed([ta.clone(), tc.clone(), tb.clone()]);
                let a_cb = Tree::bracket(ta, Tree::bracket(tc, tb));
                let lhs = normalize(&vec![(scalar(1), abc)]);
                let rhs = normalize(&vec![(scalar(1), acb), (scalar(-1), a_cb)]);
                assert_eq!(lhs, rhs, "a={a} b={b} c={c}");
            }
        }
    }
}

#[test]
fn bracket_adds_bidegrees() {
    let mut r = rng(3);
    for _ in 0..200 {
        let d = rand::Rng::gen_range(&mut r, 1..=4);
        let a = random_homogeneous(&mut r, d, 1);
        let b = random_homogeneous(&mut r, 3, 1);
        let p = bracket(&a, &b);
        if let (false, Some(ma), Some(mb)) = (p.is_zero(), a.multidegree(), b.multidegree()) {
            assert_eq!(p.multidegree(), Some(ma + mb));
        }
    }
}

#[test]
fn hall_order_is_a_strict_total_order_up_to_degree_eight() {
    let words: Vec<_> = (1..=8)
        .flat_map(|d| hall_basis(d).unwrap().to_vec())
        .collect();
    for (i, a) in words.iter().enumerate() {
        assert_eq!(hall_compare(a, a), Ordering::Equal);
        for b in &words[i + 1..] {
            let ab = hall_compare(a, b);
            assert_ne!(ab, Ordering::Equal, "{a} vs {b}");
            assert_eq!(hall_compare(b, a), ab.reverse());
            assert_eq!(a.cmp(b), ab);
        }
    }
    // Sorting with the comparison is consistent, which fails for
    // intransitive relations on a sample this large.
    let mut sorted = words.clone();
    sorted.sort_by(hall_compare);
    for w in sorted.windows(2) {
        assert_eq!(hall_compare(&w[0], &w[1]), Ordering::Less);
    }
    let mut r = rng(5);
    for _ in 0..20000 {
        use rand::seq::SliceRandom;
        let s: Vec<_> = words.choose_multiple(&mut r, 3).collect();
        if hall_compare(s[0], s[1]).is_lt() && hall_compare(s[1], s[2]).is_lt() {
            assert!(hall_compare(s[0], s[2]).is_lt());
        }
    }
}

#[test]
fn degree_is_strictly_increasing_along_the_order() {
    for d in 1..8 {
        let last = hall_basis(d).unwrap().last().unwrap().clone();
        let first = hall_basis(d + 1).unwrap()[0].clone();
        assert!(last < first);
    }
    assert_eq!(
        hall_basis(2).unwrap()[0].multidegree(),
        MultiDegree::new(1, 1)
    );
}
