//! Point counts of `y^2 = x^3 + Ax + B` and the Frobenius traces of
//! `y^2 = x^3 + 1/4`.
//!
//! For `p != 3` the curve `y^2 = x^3 + 4^{-1}` over `F_p` has
//! `p + 1 + kappa_p` points, and over `F_{p^j}` it has `p^j + 1 - s_j`
//! points where `s_j = pi^j + conj(pi)^j` for the root `pi` of
//! `T^2 + kappa_p T + p`. The `s_j` satisfy an integer recurrence and are
//! computed here exactly.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith;
use crate::chars::{self, CubicChar};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

/// `y^2 = x^3 + A x + B` over an ambient field. Singular curves are allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveSpec {
    pub a: FieldElement,
    pub b: FieldElement,
}

impl CurveSpec {
    /// `y^2 = x^3 + 4^{-1}`.
    pub fn quarter(spec: &FieldSpec) -> Result<Self> {
        let four = spec.from_int(4);
        Ok(CurveSpec { a: spec.zero(), b: spec.inv(&four)? })
    }

    pub fn rhs(&self, spec: &FieldSpec, x: &FieldElement) -> FieldElement {
        let x3 = spec.mul(&spec.square(x), x);
        spec.add(&spec.add(&x3, &spec.mul(&self.a, x)), &self.b)
    }
}

/// Projective point count: the point at infinity plus, for each `x`,
/// `1 + chi(x^3 + Ax + B)` affine points.
pub fn count_points_extension(spec: &FieldSpec, curve: &CurveSpec) -> Result<u64> {
    if spec.p() == 2 {
        return Err(Error::EvenCharacteristic);
    }
    let mut total: i64 = 1;
    for x in spec.elements()? {
        total += 1 + chars::quadratic_char(spec, &curve.rhs(spec, &x))?.value();
    }
    Ok(total as u64)
}

/// Point count over `F_p` for integer coefficients reduced mod `p`.
pub fn count_points_prime(p: u64, a: i64, b: i64) -> Result<u64> {
    if p == 2 {
        return Err(Error::EvenPrime(p));
    }
    let spec = FieldSpec::prime(p)?;
    count_points_extension(&spec, &CurveSpec { a: spec.from_int(a), b: spec.from_int(b) })
}

/// `-sum binom((p-1)/2, 2l) binom(2l, (p-1-2l)/2) B^{(p-1)/2-2l} A^{3l-(p-1)/2}`
/// over `ceil((p-1)/6) <= l <= floor((p-1)/4)`, reduced into `[0, p)`,
/// with `0^0 = 1`. Congruent to `|E(F_p)| - p - 1` modulo `p`.
pub fn trace_residue_mod_p(p: u64, a: i64, b: i64) -> Result<u64> {
    if p == 2 {
        return Err(Error::EvenPrime(p));
    }
    if !arith::is_prime(p) {
        return Err(Error::NonPrime(p));
    }
    if p == 3 {
        return Err(Error::SmallPrime(p));
    }
    let a = a.rem_euclid(p as i64) as u64;
    let b = b.rem_euclid(p as i64) as u64;
    let half = (p - 1) / 2;
    let lo = (p - 1).div_ceil(6);
    let hi = (p - 1) / 4;
    let mut sum = 0u64;
    for l in lo..=hi {
        let c = arith::mul_mod(
            arith::binomial_mod(half, 2 * l, p),
            arith::binomial_mod(2 * l, half - l, p),
            p,
        );
        // pow_mod(0, 0) = 1 gives the 0^0 convention
        let term = arith::mul_mod(
            c,
            arith::mul_mod(arith::pow_mod(b, half - 2 * l, p), arith::pow_mod(a, 3 * l - half, p), p),
            p,
        );
        sum = (sum + term) % p;
    }
    Ok((p - sum) % p)
}

/// `kappa_p` together with how it was pinned down.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KappaRecord {
    pub p: u64,
    pub kappa: i64,
    /// `-binom((p-1)/2, (p-1)/3) * 4^{-(p-1)/6} mod p` for `p = 1 mod 3`,
    /// zero otherwise.
    pub residue: u64,
    /// Points on `y^2 = x^3 + 1/4` over `F_p` (for `p = 2`, on the
    /// characteristic-2 model `y^2 + y = x^3 + 1`).
    pub curve_count: u64,
}

fn kappa_residue(p: u64) -> u64 {
    if p % 3 != 1 {
        return 0;
    }
    let c = arith::binomial_mod((p - 1) / 2, (p - 1) / 3, p);
    let inv4 = arith::inv_mod(4, p).expect("p odd");
    let t = arith::mul_mod(c, arith::pow_mod(inv4, (p - 1) / 6, p), p);
    (p - t) % p
}

/// Affine solutions of `y^2 + y = x^3 + 1` over `F_2`, plus infinity.
fn char2_model_count() -> u64 {
    let mut n = 1;
    for x in 0..2u64 {
        for y in 0..2u64 {
            if (y * y + y) % 2 == (x * x * x + 1) % 2 {
                n += 1;
            }
        }
    }
    n
}

pub fn compute_kappa(p: u64) -> Result<KappaRecord> {
    if !arith::is_prime(p) {
        return Err(Error::NonPrime(p));
    }
    if p == 3 {
        return Err(Error::UnsupportedPrime(p));
    }
    let residue = kappa_residue(p);
    let kappa: i64 = match p {
        _ if p % 3 == 2 => 0,
        7 => 1,
        13 => -5,
        _ => {
            let bound = arith::isqrt(4 * p) as i64;
            let r = residue as i64;
            let p_i = p as i64;
            // 4 sqrt(p) < p for p >= 19, so exactly one candidate lands in range
            let cands: Vec<i64> = [r, r - p_i].into_iter().filter(|c| c.abs() <= bound).collect();
            match cands.as_slice() {
                [c] => *c,
                _ => return Err(Error::CrossCheckFailed { p, kappa: r, count: 0 }),
            }
        }
    };
    let curve_count = if p == 2 {
        char2_model_count()
    } else {
        let spec = FieldSpec::prime(p)?;
        count_points_extension(&spec, &CurveSpec::quarter(&spec)?)?
    };
    if curve_count as i64 != p as i64 + 1 + kappa {
        return Err(Error::CrossCheckFailed { p, kappa, count: curve_count });
    }
    Ok(KappaRecord { p, kappa, residue, curve_count })
}

/// Iteration below this index, matrix powering above.
const TRACE_ITERATION_LIMIT: u64 = 64;

/// `s_0, s_1, ...` with `s_j = pi_p^j + conj(pi_p)^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceSequence {
    pub p: u64,
    pub kappa: i64,
    pub values: Vec<BigInt>,
}

impl TraceSequence {
    /// `s_0 ..= s_last` by the recurrence `s_j = -kappa s_{j-1} - p s_{j-2}`.
    pub fn new(p: u64, last: usize) -> Result<Self> {
        let kappa = compute_kappa(p)?.kappa;
        Ok(TraceSequence { p, kappa, values: iterate_traces(p, kappa, last) })
    }
}

fn iterate_traces(p: u64, kappa: i64, last: usize) -> Vec<BigInt> {
    let c1 = BigInt::from(-kappa);
    let c2 = BigInt::from(-(p as i64));
    let mut v = vec![BigInt::from(2), c1.clone()];
    while v.len() <= last {
        let n = v.len();
        let next = &c1 * &v[n - 1] + &c2 * &v[n - 2];
        v.push(next);
    }
    v.truncate(last + 1);
    v
}

type Mat2 = [[BigInt; 2]; 2];

fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    [
        [&a[0][0] * &b[0][0] + &a[0][1] * &b[1][0], &a[0][0] * &b[0][1] + &a[0][1] * &b[1][1]],
        [&a[1][0] * &b[0][0] + &a[1][1] * &b[1][0], &a[1][0] * &b[0][1] + &a[1][1] * &b[1][1]],
    ]
}

fn mat_pow(m: &Mat2, mut e: u64) -> Mat2 {
    let mut acc: Mat2 = [[BigInt::one(), BigInt::zero()], [BigInt::zero(), BigInt::one()]];
    let mut base = m.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = mat_mul(&acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mat_mul(&base, &base);
        }
    }
    acc
}

/// `s_j` for the curve `y^2 = x^3 + 1/4` over `F_p`, exactly.
pub fn pi_trace(p: u64, j: u64) -> Result<BigInt> {
    let kappa = compute_kappa(p)?.kappa;
    Ok(trace_from_kappa(p, kappa, j))
}

/// `s_j` given `kappa_p` directly.
pub fn trace_from_kappa(p: u64, kappa: i64, j: u64) -> BigInt {
    if j <= TRACE_ITERATION_LIMIT {
        return iterate_traces(p, kappa, j as usize).pop().expect("nonempty");
    }
    // (s_j, s_{j-1}) = M^{j-1} (s_1, s_0)
    let m: Mat2 = [
        [BigInt::from(-kappa), BigInt::from(-(p as i64))],
        [BigInt::one(), BigInt::zero()],
    ];
    let mj = mat_pow(&m, j - 1);
    &mj[0][0] * BigInt::from(-kappa) + &mj[0][1] * BigInt::from(2)
}

/// `sum_{a in F_{4^k} \ {1, xi, xi^2}} eta(f(a)) + eta^2(f(a))` with
/// `f(a) = (a^2 + a + 1)/(a^2 + 1)`, evaluated directly.
pub fn char2_cubic_sum(k: u32) -> Result<i64> {
    if k == 0 {
        return Err(Error::ZeroDegree);
    }
    let spec = FieldSpec::new(2, 2 * k, None)?;
    let xi = chars::xi(&spec)?;
    let excluded = [spec.one(), xi.clone(), spec.square(&xi)];
    let mut sum = 0i64;
    for a in spec.elements()? {
        if excluded.contains(&a) {
            continue;
        }
        let a2 = spec.square(&a);
        let num = spec.add(&spec.add(&a2, &a), &spec.one());
        let den = spec.add(&a2, &spec.one());
        let eta = chars::cubic_char(&spec, &spec.div(&num, &den)?)?;
        debug_assert_ne!(eta, CubicChar::Zero);
        sum += eta.symmetric_sum();
    }
    Ok(sum)
}

/// Hasse window check `s^2 <= 4 p^j`.
pub fn within_hasse(p: u64, j: u64, s: &BigInt) -> bool {
    let bound = BigInt::from(4) * num_traits::pow(BigInt::from(p), j as usize);
    s * s <= bound
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Counts pairs (x, y) directly, no characters involved.
    fn count_by_pairs(p: u64, a: u64, b: u64) -> u64 {
        let mut n = 1;
        for x in 0..p {
            let rhs = (x * x % p * x + a * x + b) % p;
            for y in 0..p {
                if y * y % p == rhs {
                    n += 1;
                }
            }
        }
        n
    }

    #[test]
    fn prime_counts() {
        assert_eq!(count_by_pairs(7, 0, 2), 9);
        assert_eq!(count_points_prime(7, 0, 2).unwrap(), 9);
        assert_eq!(count_by_pairs(5, 1, 1), 9);
        assert_eq!(count_points_prime(5, 1, 1).unwrap(), 9);
        let inv4 = arith::inv_mod(4, 73).unwrap();
        assert_eq!(count_by_pairs(73, 0, inv4), 81);
        assert_eq!(count_points_prime(73, 0, inv4 as i64).unwrap(), 81);
        assert_eq!(count_points_prime(2, 0, 1).unwrap_err(), Error::EvenPrime(2));
    }

    #[test]
    fn character_count_matches_pairs() {
        for p in [5u64, 7, 11, 13] {
            for a in 0..p {
                for b in 0..p {
                    assert_eq!(
                        count_points_prime(p, a as i64, b as i64).unwrap(),
                        count_by_pairs(p, a, b)
                    );
                }
            }
        }
    }

    #[test]
    fn trace_residue_examples() {
        assert_eq!(trace_residue_mod_p(7, 0, 2).unwrap(), 1);
        for p in [5u64, 11, 17, 23, 29] {
            for b in 0..p {
                assert_eq!(trace_residue_mod_p(p, 0, b as i64).unwrap(), 0);
            }
        }
        assert_eq!(trace_residue_mod_p(13, 0, 10).unwrap(), 8);
        assert_eq!(trace_residue_mod_p(3, 0, 1).unwrap_err(), Error::SmallPrime(3));
        assert_eq!(trace_residue_mod_p(2, 0, 1).unwrap_err(), Error::EvenPrime(2));
    }

    #[test]
    fn kappa_examples() {
        assert_eq!(compute_kappa(7).unwrap().kappa, 1);
        assert_eq!(compute_kappa(13).unwrap().kappa, -5);
        let k73 = compute_kappa(73).unwrap();
        assert_eq!(k73.kappa, 7);
        assert_eq!(k73.curve_count, 81);
        assert_eq!(k73.residue, 7);
        assert_eq!(compute_kappa(5).unwrap().kappa, 0);
        assert_eq!(compute_kappa(2).unwrap().kappa, 0);
        assert_eq!(compute_kappa(2).unwrap().curve_count, 3);
        assert_eq!(compute_kappa(3).unwrap_err(), Error::UnsupportedPrime(3));
        // residues for the hard-coded primes still match kappa mod p
        assert_eq!(compute_kappa(13).unwrap().residue, 8);
        assert_eq!(compute_kappa(7).unwrap().residue, 1);
    }

    #[test]
    fn traces() {
        assert_eq!(pi_trace(73, 0).unwrap(), BigInt::from(2));
        assert_eq!(pi_trace(73, 1).unwrap(), BigInt::from(-7));
        assert_eq!(pi_trace(73, 2).unwrap(), BigInt::from(-97));
        assert_eq!(pi_trace(2, 2).unwrap(), BigInt::from(-4));
        assert_eq!(pi_trace(7, 2).unwrap(), BigInt::from(-13));
        assert_eq!(pi_trace(13, 2).unwrap(), BigInt::from(-1));
    }

    #[test]
    fn matrix_route_matches_iteration() {
        for p in [2u64, 5, 7, 13, 73] {
            let kappa = compute_kappa(p).unwrap().kappa;
            let seq = iterate_traces(p, kappa, 200);
            for j in [65u64, 66, 100, 151, 200] {
                assert_eq!(trace_from_kappa(p, kappa, j), seq[j as usize], "p={p} j={j}");
            }
        }
    }

    #[test]
    fn extension_counts() {
        let f49 = FieldSpec::new(7, 2, None).unwrap();
        assert_eq!(count_points_extension(&f49, &CurveSpec::quarter(&f49).unwrap()).unwrap(), 63);
        let f169 = FieldSpec::new(13, 2, None).unwrap();
        assert_eq!(
            count_points_extension(&f169, &CurveSpec::quarter(&f169).unwrap()).unwrap(),
            171
        );
        let f4 = FieldSpec::new(2, 2, None).unwrap();
        assert_eq!(
            count_points_extension(&f4, &CurveSpec { a: f4.zero(), b: f4.one() }).unwrap_err(),
            Error::EvenCharacteristic
        );
    }

    #[test]
    fn hasse_on_f25() {
        let f25 = FieldSpec::new(5, 2, None).unwrap();
        let elems: Vec<_> = f25.elements().unwrap().collect();
        for a in elems.iter().step_by(3) {
            for b in elems.iter().step_by(4) {
                // 4a^3 + 27b^2 != 0
                let disc = f25.add(
                    &f25.mul(&f25.from_int(4), &f25.pow(a, 3)),
                    &f25.mul(&f25.from_int(27), &f25.square(b)),
                );
                if disc.is_zero() {
                    continue;
                }
                let n = count_points_extension(&f25, &CurveSpec { a: a.clone(), b: b.clone() })
                    .unwrap();
                assert!((16..=36).contains(&n), "count {n}");
            }
        }
    }

    #[test]
    fn char2_sums() {
        assert_eq!(char2_cubic_sum(1).unwrap(), 2);
        assert_eq!(char2_cubic_sum(2).unwrap(), -10);
        assert_eq!(char2_cubic_sum(3).unwrap(), 14);
    }

    #[test]
    fn hasse_bound_on_traces() {
        for p in [2u64, 7, 13, 73] {
            let seq = TraceSequence::new(p, 64).unwrap();
            for (j, s) in seq.values.iter().enumerate() {
                assert!(within_hasse(p, j as u64, s));
            }
        }
    }
}
