//! Known facts about constants of degree at most 7, checked end to end.

use serde::{Deserialize, Serialize};

use crate::constants::{constants_up_to, coordinates, KernelReport};
use crate::derivation::binomial;
use crate::error::Error;
use crate::hall::{hall_basis_multidegree, Letter, MultiDegree, Tree};
use crate::linalg::RowSpace;
use crate::parse::parse;
use crate::poly::{normalize_tree, LiePoly, Scalar};
use crate::subalgebra::{graded_closure, membership_report};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Check {
        Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        }
    }
}

/// Kernel dimensions for total degree at most 7, nonzero entries only.
pub const DIMENSION_TABLE: [((u32, u32), usize); 12] = [
    ((1, 0), 1),
    ((1, 1), 1),
    ((2, 1), 1),
    ((3, 1), 1),
    ((4, 1), 1),
    ((3, 2), 1),
    ((5, 1), 1),
    ((4, 2), 1),
    ((3, 3), 1),
    ((6, 1), 1),
    ((5, 2), 2),
    ((4, 3), 2),
];

pub fn expected_dim(md: MultiDegree) -> usize {
    DIMENSION_TABLE
        .iter()
        .find(|((a, b), _)| *a == md.deg_x && *b == md.deg_y)
        .map_or(0, |(_, d)| *d)
}

fn parse_all(exprs: &[&str]) -> Vec<LiePoly> {
    exprs
        .iter()
        .map(|s| parse(s).expect("built-in expression"))
        .collect()
}

/// Whether two sets of homogeneous polynomials of bidegree `md` span the
/// same space.
pub fn same_span(md: MultiDegree, a: &[LiePoly], b: &[LiePoly]) -> Result<bool, Error> {
    let basis = hall_basis_multidegree(md)?;
    let span = |ps: &[LiePoly]| -> Result<RowSpace, Error> {
        let mut s = RowSpace::new(basis.len());
        for p in ps {
            s.insert(&coordinates(p, &basis)?)?;
        }
        Ok(s)
    };
    let (sa, sb) = (span(a)?, span(b)?);
    let a_in_b = a
        .iter()
        .all(|p| sb.contains(&coordinates(p, &basis).unwrap()));
    let b_in_a = b
        .iter()
        .all(|p| sa.contains(&coordinates(p, &basis).unwrap()));
    Ok(a_in_b && b_in_a)
}

fn x() -> Tree {
    Tree::Letter(Letter::X)
}

fn y() -> Tree {
    Tree::Letter(Letter::Y)
}

fn with_xs(head: Vec<Tree>, n: u32) -> Vec<Tree> {
    let mut v = head;
    v.extend((0..n).map(|_| x()));
    v
}

/// Both sides of
/// `[y,x,xᵃ,y,xᵇ] = [y,x,xᵃ⁺ᵇ,y] + Σ_{i<b} C(b,i) [[y,x,xᵃ⁺ⁱ],[y,xᵇ⁻ⁱ]]`.
pub fn binomial_rearrangement(a: u32, b: u32) -> (LiePoly, LiePoly) {
    let mut lhs_items = with_xs(vec![y(), x()], a);
    lhs_items.push(y());
    let lhs = normalize_tree(&Tree::left_normed(with_xs(lhs_items, b)));

    let mut first = with_xs(vec![y(), x()], a + b);
    first.push(y());
    let mut rhs = normalize_tree(&Tree::left_normed(first));
    for i in 0..b {
        let left = Tree::left_normed(with_xs(vec![y(), x()], a + i));
        let right = Tree::left_normed(with_xs(vec![y()], b - i));
        let term = normalize_tree(&Tree::bracket(left, right));
        rhs.add_scaled(&term, &Scalar::from_integer(binomial(b, i)));
    }
    (lhs, rhs)
}

fn check_dimension_table(k: &KernelReport) -> Check {
    let mismatches: Vec<String> = k
        .components
        .iter()
        .filter(|c| c.dim != expected_dim(c.multidegree()))
        .map(|c| {
            format!(
                "{} has {} expected {}",
                c.multidegree(),
                c.dim,
                expected_dim(c.multidegree())
            )
        })
        .collect();
    Check::new(
        "kernel dimensions through degree 7",
        mismatches.is_empty(),
        if mismatches.is_empty() {
            format!("{} bidegrees match", k.components.len())
        } else {
            mismatches.join("; ")
        },
    )
}

fn check_listed_bases(k: &KernelReport) -> Result<Check, Error> {
    let cases = [
        (MultiDegree::new(3, 3), parse_all(&["[[y,x,y],[y,x,x]]"])),
        (
            MultiDegree::new(4, 3),
            parse_all(&[
                "[[y,x,x],[y,x],[y,x]]",
                "[[y,x,x,y],[y,x,x]] - [[y,x,x,x],[y,x,y]]",
            ]),
        ),
    ];
    let mut ok = true;
    let mut detail = Vec::new();
    for (md, listed) in cases {
        let basis = k.component(md).map(|c| c.basis.clone()).unwrap_or_default();
        let same = same_span(md, &basis, &listed)?;
        ok &= same;
        detail.push(format!(
            "{md}: {}",
            if same { "same span" } else { "different span" }
        ));
    }
    Ok(Check::new(
        "listed constants span the kernel at (3,3) and (4,3)",
        ok,
        detail.join(", "),
    ))
}

fn check_binomial_rearrangement() -> Check {
    let mut failed = Vec::new();
    for a in 0..=4 {
        for b in 1..=4 {
            let (l, r) = binomial_rearrangement(a, b);
            if l != r {
                failed.push(format!("a={a} b={b}"));
            }
        }
    }
    Check::new(
        "binomial rearrangement of [y,x,x^a,y,x^b] for a<=4, 1<=b<=4",
        failed.is_empty(),
        if failed.is_empty() {
            "20 cases".to_string()
        } else {
            failed.join(", ")
        },
    )
}

fn check_containment(
    gens: &[&str],
    bound: u32,
    k: &KernelReport,
    name: &str,
) -> Result<Check, Error> {
    let closure = graded_closure(&parse_all(gens), bound)?;
    let sub = KernelReport {
        max_degree: bound,
        components: k
            .components
            .iter()
            .filter(|c| c.deg_x + c.deg_y <= bound)
            .cloned()
            .collect(),
    };
    let r = membership_report(&closure, &sub)?;
    let bad: Vec<String> = r.failures().map(|e| e.multidegree().to_string()).collect();
    Ok(Check::new(
        name,
        r.contained,
        if bad.is_empty() {
            "contained".to_string()
        } else {
            format!("not contained at {}", bad.join(" "))
        },
    ))
}

fn check_two_y_constants() -> Result<Check, Error> {
    let bound = 8;
    let closure = graded_closure(&parse_all(&["x", "[y,x]"]), bound)?;
    let mut bad = Vec::new();
    for n in 2..=bound {
        let md = MultiDegree::new(n - 2, 2);
        for f in crate::constants::kernel_basis(md)? {
            if !closure.contains(&f)? {
                bad.push(md.to_string());
            }
        }
    }
    Ok(Check::new(
        "constants with deg_y = 2 lie in the subalgebra generated by x, [y,x] (degree <= 8)",
        bad.is_empty(),
        if bad.is_empty() {
            "contained".to_string()
        } else {
            bad.join(" ")
        },
    ))
}

fn check_gaps_of_small_generators(k: &KernelReport) -> Result<Check, Error> {
    let closure = graded_closure(&parse_all(&["x", "[y,x]"]), 7)?;
    let r = membership_report(&closure, k)?;
    let bad: Vec<MultiDegree> = r.failures().map(|e| e.multidegree()).collect();
    let expect = vec![MultiDegree::new(3, 3), MultiDegree::new(4, 3)];
    let names: Vec<String> = bad.iter().map(ToString::to_string).collect();
    Ok(Check::new(
        "x, [y,x] miss exactly the constants at (3,3) and (4,3) through degree 7",
        bad == expect,
        format!("not contained at {}", names.join(" ")),
    ))
}

fn check_identities() -> Check {
    let pairs = [
        (
            "[[y,x,x,y],[y,x,x]] - [[y,x,x,x],[y,x,y]]",
            "[[[y,x,y],[y,x,x]],x]",
        ),
        ("[y,x,x,y,x]", "[y,x,x,x,y] + [y,x,x,[y,x]]"),
        (
            "[y,x,x,y,x,y]",
            "[y,x,x,x,y,y] + [y,x,x,y,[y,x]] - [y,x,y,[y,x,x]]",
        ),
        (
            "[y,x,x,y,y,x]",
            "[y,x,x,x,y,y] + 2*[y,x,x,y,[y,x]] - [y,x,y,[y,x,x]]",
        ),
        ("[y,x,y,y,x,x]", "[y,x,x,x,y,y] + 3*[y,x,x,y,[y,x]]"),
        ("[y,x,x,x,y,x]", "[y,x,x,x,x,y] + [y,x,x,x,[y,x]]"),
        ("[y,x,x,y,x,x]", "[y,x,x,x,x,y] + 2*[y,x,x,x,[y,x]]"),
        ("[x,y,x,y]", "[x,y,y,x]"),
    ];
    let failed: Vec<String> = pairs
        .iter()
        .filter(|(l, r)| parse(l).unwrap() != parse(r).unwrap())
        .map(|(l, r)| format!("{l} != {r}"))
        .collect();
    Check::new(
        "hand rewritings into the Hall basis",
        failed.is_empty(),
        if failed.is_empty() {
            format!("{} identities", pairs.len())
        } else {
            failed.join("; ")
        },
    )
}

/// Runs every check; a check that fails is reported, not raised.
pub fn verify_all() -> Result<Vec<Check>, Error> {
    let k = constants_up_to(7)?;
    Ok(vec![
        check_dimension_table(&k),
        check_listed_bases(&k)?,
        check_binomial_rearrangement(),
        check_two_y_constants()?,
        check_containment(
            &["x", "[y,x]"],
            5,
            &k,
            "constants of degree <= 5 lie in <x, [y,x]>",
        )?,
        check_containment(
            &["x", "[y,x]", "[[y,x,y],[y,x,x]]"],
            6,
            &k,
            "constants of degree <= 6 lie in <x, [y,x], [[y,x,y],[y,x,x]]>",
        )?,
        check_containment(
            &["x", "[y,x]", "[[y,x,y],[y,x,x]]"],
            7,
            &k,
            "constants of degree <= 7 lie in <x, [y,x], [[y,x,y],[y,x,x]]>",
        )?,
        check_gaps_of_small_generators(&k)?,
        check_identities(),
    ])
}
