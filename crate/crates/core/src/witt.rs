//! Necklace counts for the dimensions of the free Lie algebra of rank two.
//!
//! These are independent of the Hall basis enumeration and serve as its
//! oracle.

use num::{BigInt, Integer, ToPrimitive, Zero};

use crate::derivation::binomial;
use crate::hall::MultiDegree;

/// Möbius function.
pub fn mobius(n: u32) -> i32 {
    let mut n = n;
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

fn divisors(n: u32) -> impl Iterator<Item = u32> {
    (1..=n).filter(move |e| n.is_multiple_of(*e))
}

/// `(1/d) Σ_{e | d} μ(e) 2^{d/e}`.
pub fn witt_total(d: u32) -> u64 {
    assert!(d >= 1, "degree must be positive");
    let sum: BigInt = divisors(d)
        .map(|e| BigInt::from(mobius(e)) * (BigInt::from(1) << (d / e)))
        .sum();
    (sum / BigInt::from(d)).to_u64().unwrap()
}

/// `(1/n) Σ_{e | gcd(a,b)} μ(e) (n/e)! / ((a/e)! (b/e)!)` with `n = a + b`.
pub fn witt_dim(md: MultiDegree) -> u64 {
    let n = md.total();
    assert!(n >= 1, "total degree must be positive");
    let g = md.deg_x.gcd(&md.deg_y);
    let mut sum = BigInt::zero();
    for e in divisors(g) {
        sum += BigInt::from(mobius(e)) * binomial(n / e, md.deg_x / e);
    }
    let (q, r) = sum.div_rem(&BigInt::from(n));
    debug_assert!(r.is_zero());
    q.to_u64().unwrap()
}
