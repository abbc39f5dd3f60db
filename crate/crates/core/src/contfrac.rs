//! Continued fractions of reals known only to lie in a rational interval.
//!
//! Both endpoints are expanded in lockstep; a partial quotient is kept only
//! while the two expansions agree, so every convergent returned belongs to
//! every real in the interval.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// `m / n` with `n > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Convergent {
    pub m: BigInt,
    pub n: BigInt,
}

/// Partial quotients shared by every real in `[lo_num/den, hi_num/den]`,
/// at most `limit` of them. `den` must be positive and `lo_num <= hi_num`.
pub fn common_quotients(lo_num: &BigInt, hi_num: &BigInt, den: &BigInt, limit: usize) -> Vec<BigInt> {
    let (mut a, mut b) = (lo_num.clone(), den.clone());
    let (mut c, mut d) = (hi_num.clone(), den.clone());
    let mut out = Vec::new();
    while out.len() < limit {
        let (q1, r1) = a.div_mod_floor(&b);
        let (q2, r2) = c.div_mod_floor(&d);
        // a quotient that ends an expansion is ambiguous at the boundary
        if q1 != q2 || r1.is_zero() || r2.is_zero() {
            break;
        }
        out.push(q1);
        (a, b) = (b, r1);
        (c, d) = (d, r2);
    }
    out
}

/// Partial quotients of the rational `num / den` (`den > 0`).
pub fn rational_quotients(num: &BigInt, den: &BigInt) -> Vec<BigInt> {
    let (mut a, mut b) = (num.clone(), den.clone());
    let mut out = Vec::new();
    while !b.is_zero() {
        let (q, r) = a.div_mod_floor(&b);
        out.push(q);
        (a, b) = (b, r);
    }
    out
}

/// Convergents `m_l / n_l` from partial quotients.
pub fn convergents(quotients: &[BigInt]) -> Vec<Convergent> {
    let (mut m1, mut m2) = (BigInt::one(), BigInt::zero());
    let (mut n1, mut n2) = (BigInt::zero(), BigInt::one());
    let mut out = Vec::with_capacity(quotients.len());
    for a in quotients {
        let m = a * &m1 + &m2;
        let n = a * &n1 + &n2;
        out.push(Convergent { m: m.clone(), n: n.clone() });
        (m2, m1) = (m1, m);
        (n2, n1) = (n1, n);
    }
    out
}

/// `|num/den - m/n| < 1/n^2`, exactly.
pub fn approximates(conv: &Convergent, num: &BigInt, den: &BigInt) -> bool {
    // |num n - m den| n < den
    let diff = (num * &conv.n - &conv.m * den).abs();
    diff * &conv.n < *den
}
