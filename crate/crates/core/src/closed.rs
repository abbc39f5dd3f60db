//! Exact counts of permutation binomials for `r = 2, 3` and the bounds
//! they are compared against.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::arith;
use crate::curve;
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::perm::{BinomialEvaluator, CriterionProfile};
use crate::surd::QuadraticSurd;

fn checked_prime_power(q: u64) -> Result<(u64, u32)> {
    arith::prime_power(q).ok_or(Error::NonPrime(q))
}

/// `(q - 2 + (-1)^n) / 2`.
pub fn closed_count_r2(q: u64, n: u64) -> Result<u64> {
    checked_prime_power(q)?;
    if q % 2 == 0 {
        return Err(Error::EvenQ(q));
    }
    if n == 0 {
        return Err(Error::ZeroExponent);
    }
    if arith::gcd(n, (q - 1) / 2) != 1 {
        return Err(Error::GcdViolation { n, r: 2 });
    }
    Ok(if n % 2 == 0 { (q - 1) / 2 } else { (q - 3) / 2 })
}

/// `(eps1, eps2)` from `q mod 9` and `n`.
pub fn epsilons_from_residue(q_mod_9: u64, n: u64) -> (i64, i64) {
    // q - 3n mod 9, normalized into 0..9
    let t = (q_mod_9 % 9 + 9 - (3 * (n % 3)) % 9) % 9;
    let e1 = if t == 1 { -2 } else { 1 };
    let e2 = if n % 3 == 0 { -2 } else { 1 };
    (e1, e2)
}

/// `eps1 = -2` iff `q - 3n = 1 mod 9`; `eps2 = -2` iff `3 | n`; otherwise 1.
pub fn epsilons(q: u64, n: u64) -> (i64, i64) {
    epsilons_from_residue(q % 9, n)
}

/// The count for `r = 3`, `q = p^k`:
/// `(2q - 3(eps1 + eps2) - 10 - 2 s_k) / 9`.
pub fn closed_count_r3(p: u64, k: u64, n: u64) -> Result<BigInt> {
    if !arith::is_prime(p) {
        return Err(Error::NonPrime(p));
    }
    if k == 0 {
        return Err(Error::ZeroDegree);
    }
    if n == 0 {
        return Err(Error::ZeroExponent);
    }
    if arith::pow_mod(p, k, 3) != 1 {
        return Err(Error::BadExtensionForCubic { p, k });
    }
    if !arith::coprime_to_cofactor(n, p, k, 3) {
        return Err(Error::GcdViolation { n, r: 3 });
    }
    let (e1, e2) = epsilons_from_residue(arith::pow_mod(p, k, 9), n);
    let s_k = curve::pi_trace(p, k)?;
    let q: BigInt = num_traits::pow(BigInt::from(p), k as usize);
    let num: BigInt = q * 2 - 3 * (e1 + e2) - 10 - s_k * 2;
    if !(&num % BigInt::from(9)).is_zero() {
        return Err(Error::DivisibilityViolation);
    }
    Ok(num / 9)
}

fn factorial(r: u64) -> BigInt {
    (1..=r).map(BigInt::from).product()
}

/// `M_r = r^{r+1} - 2 r^r - r^{r-1} + 2`.
pub fn masuda_zieve_constant(r: u64) -> BigInt {
    let rb = BigInt::from(r);
    let e = r as usize;
    num_traits::pow(rb.clone(), e + 1) - num_traits::pow(rb.clone(), e) * 2
        - num_traits::pow(rb, e - 1)
        + 2
}

/// `(r!/r^r)(q + 1 - sqrt(q) M_r - (r+1) r^{r-1})` and
/// `(r!/r^r)(q + 1 + sqrt(q) M_r)`, as exact surds. The lower bound is not
/// clamped at zero.
pub fn masuda_zieve_bounds(q: u64, r: u64) -> Result<(QuadraticSurd, QuadraticSurd)> {
    if r < 2 {
        return Err(Error::UnsupportedIndex(r));
    }
    if q < 2 || (q - 1) % r != 0 {
        return Err(Error::IndexNotDividing { r, q_minus_1: q.saturating_sub(1) });
    }
    let f = factorial(r);
    let rr = num_traits::pow(BigInt::from(r), r as usize);
    let m = masuda_zieve_constant(r);
    let qb = BigInt::from(q);
    let shift = BigInt::from(r + 1) * num_traits::pow(BigInt::from(r), r as usize - 1);
    let lower = QuadraticSurd::new(&f * (&qb + 1 - shift), -(&f * &m), q, rr.clone());
    let upper = QuadraticSurd::new(&f * (&qb + 1), &f * &m, q, rr);
    Ok((lower, upper))
}

/// `ceil((2q - 4 sqrt(q) - 16) / 9)` and `floor((2q + 4 sqrt(q) - 7) / 9)`.
pub fn corollary_bounds_r3(q: u64) -> Result<(BigInt, BigInt)> {
    if q % 3 != 1 {
        return Err(Error::BadFieldForCubic(q));
    }
    let qb = BigInt::from(q);
    let lower = QuadraticSurd::new(&qb * 2 - 16, -4, q, 9).ceil();
    let upper = QuadraticSurd::new(&qb * 2 - 7, 4, q, 9).floor();
    Ok((lower, upper))
}

/// Everything known about one `(q, n, r)` cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountReport {
    pub q: u64,
    pub p: u64,
    pub k: u32,
    pub n: u64,
    pub r: u64,
    pub epsilon1: Option<i64>,
    pub epsilon2: Option<i64>,
    pub s_k: Option<BigInt>,
    pub closed_count: BigInt,
    /// Count by the character criterion, when computed.
    pub criterion_count: Option<u64>,
    pub brute_count: Option<u64>,
    pub mz_lower: QuadraticSurd,
    pub mz_upper: QuadraticSurd,
    pub cor_lower: Option<BigInt>,
    pub cor_upper: Option<BigInt>,
    /// Admissible `a` in enumeration order, when listed.
    pub a_values: Option<Vec<FieldElement>>,
}

impl CountReport {
    /// Closed-form data only; no enumeration.
    pub fn closed(q: u64, n: u64, r: u64) -> Result<Self> {
        let (p, k) = checked_prime_power(q)?;
        let (mz_lower, mz_upper) = masuda_zieve_bounds(q, r)?;
        let mut report = CountReport {
            q,
            p,
            k,
            n,
            r,
            epsilon1: None,
            epsilon2: None,
            s_k: None,
            closed_count: BigInt::zero(),
            criterion_count: None,
            brute_count: None,
            mz_lower,
            mz_upper,
            cor_lower: None,
            cor_upper: None,
            a_values: None,
        };
        match r {
            2 => report.closed_count = closed_count_r2(q, n)?.into(),
            3 => {
                let (e1, e2) = epsilons(q, n);
                report.closed_count = closed_count_r3(p, k as u64, n)?;
                report.epsilon1 = Some(e1);
                report.epsilon2 = Some(e2);
                report.s_k = Some(curve::pi_trace(p, k as u64)?);
                let (lo, hi) = corollary_bounds_r3(q)?;
                report.cor_lower = Some(lo);
                report.cor_upper = Some(hi);
            }
            _ => return Err(Error::UnsupportedIndex(r)),
        }
        Ok(report)
    }

    /// Closed form plus the criterion count and list, and optionally the
    /// brute-force count.
    pub fn verified(spec: &FieldSpec, n: u64, r: u64, brute: bool) -> Result<Self> {
        let mut report = CountReport::closed(spec.q(), n, r)?;
        let profile = CriterionProfile::new(spec, r)?;
        let list: Vec<FieldElement> = profile.admissible(n).into_iter().map(|i| spec.decode(i)).collect();
        report.criterion_count = Some(list.len() as u64);
        report.a_values = Some(list);
        if brute {
            report.brute_count = Some(brute_count(spec, n, r)?);
        }
        Ok(report)
    }

    /// `closed_count` lies in `[max(0, ceil(mz_lower)), floor(mz_upper)]`.
    pub fn within_mz(&self) -> bool {
        let lo = self.mz_lower.ceil().max(BigInt::zero());
        lo <= self.closed_count && self.closed_count <= self.mz_upper.floor()
    }

    /// Containment in the `r = 3` ceiling/floor pair; `None` for `r = 2`.
    pub fn within_corollary(&self) -> Option<bool> {
        match (&self.cor_lower, &self.cor_upper) {
            (Some(lo), Some(hi)) => Some(lo <= &self.closed_count && &self.closed_count <= hi),
            _ => None,
        }
    }

    /// Whether every computed count agrees with the closed form.
    pub fn consistent(&self) -> bool {
        let agrees = |c: Option<u64>| c.is_none_or(|c| BigInt::from(c) == self.closed_count);
        agrees(self.criterion_count) && agrees(self.brute_count) && !self.closed_count.is_negative()
    }
}

/// Number of `a` for which the binomial permutes, by direct evaluation.
pub fn brute_count(spec: &FieldSpec, n: u64, r: u64) -> Result<u64> {
    let eval = BinomialEvaluator::new(spec, n, r)?;
    Ok(spec.elements()?.filter(|a| eval.permutes(a)).count() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{enumerate_perm_binomials, Method};

    fn bi(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn r2_examples() {
        assert_eq!(closed_count_r2(13, 1).unwrap(), 5);
        assert_eq!(closed_count_r2(7, 2).unwrap(), 3);
        assert_eq!(closed_count_r2(13, 2).unwrap_err(), Error::GcdViolation { n: 2, r: 2 });
        assert_eq!(closed_count_r2(3, 1).unwrap(), 0);
        assert_eq!(closed_count_r2(13, 3).unwrap_err(), Error::GcdViolation { n: 3, r: 2 });
        assert_eq!(closed_count_r2(16, 1).unwrap_err(), Error::EvenQ(16));
    }

    #[test]
    fn r2_examples_against_brute_force() {
        let f = FieldSpec::prime(13).unwrap();
        assert_eq!(brute_count(&f, 1, 2).unwrap(), 5);
        // gcd(2, 6) = 2: nothing permutes
        assert_eq!(brute_count(&f, 2, 2).unwrap(), 0);
        let f7 = FieldSpec::prime(7).unwrap();
        assert_eq!(brute_count(&f7, 2, 2).unwrap(), 3);
        let f3 = FieldSpec::prime(3).unwrap();
        assert_eq!(brute_count(&f3, 1, 2).unwrap(), 0);
    }

    #[test]
    fn epsilon_examples() {
        assert_eq!(epsilons(73, 35), (1, 1));
        assert_eq!(epsilons(4, 1), (-2, 1));
        assert_eq!(epsilons(7, 3), (1, -2));
        // q - 3n negative and = 1 mod 9: 10 - 3*3 = 1
        assert_eq!(epsilons(10, 3), (-2, -2));
        assert_eq!(epsilons(1, 30), (-2, -2));
    }

    #[test]
    fn r3_examples() {
        assert_eq!(closed_count_r3(73, 1, 35).unwrap(), bi(16));
        assert_eq!(closed_count_r3(2, 2, 1).unwrap(), bi(1));
        assert_eq!(closed_count_r3(7, 1, 1).unwrap(), bi(0));
        assert_eq!(
            closed_count_r3(5, 1, 1).unwrap_err(),
            Error::BadExtensionForCubic { p: 5, k: 1 }
        );
        assert_eq!(closed_count_r3(13, 1, 2).unwrap_err(), Error::GcdViolation { n: 2, r: 3 });
    }

    #[test]
    fn r3_examples_against_brute_force() {
        let f4 = FieldSpec::new(2, 2, None).unwrap();
        assert_eq!(brute_count(&f4, 1, 3).unwrap(), 1);
        let f7 = FieldSpec::prime(7).unwrap();
        assert_eq!(brute_count(&f7, 1, 3).unwrap(), 0);
        let f73 = FieldSpec::prime(73).unwrap();
        assert_eq!(brute_count(&f73, 35, 3).unwrap(), 16);
    }

    #[test]
    fn r3_large_extension_is_integral() {
        // q = 73^40 is far beyond enumeration but the formula still divides
        let t = closed_count_r3(73, 40, 1).unwrap();
        assert!(t.is_positive());
    }

    #[test]
    fn masuda_zieve_examples() {
        assert_eq!(masuda_zieve_constant(2), bi(0));
        assert_eq!(masuda_zieve_constant(3), bi(20));
        for q in [5u64, 7, 9, 13, 25] {
            let (lo, hi) = masuda_zieve_bounds(q, 2).unwrap();
            // (q-5)/2 and (q+1)/2, both rational
            assert_eq!(lo.scaled(&bi(2)).floor(), bi(q as i64 - 5));
            assert_eq!(hi.scaled(&bi(2)).floor(), bi(q as i64 + 1));
            assert!(lo.is_rational() || lo.scaled(&bi(2)).ceil() == bi(q as i64 - 5));
        }
        let (lo, hi) = masuda_zieve_bounds(73, 3).unwrap();
        assert!(lo.ceil().is_negative());
        // (2/9)(74 + 20 sqrt 73) = 54.41...
        assert_eq!(hi.to_decimal_floor(1), "54.4");
        let v = 2.0 / 9.0 * (73.0 - 35.0 - 20.0 * 73f64.sqrt());
        assert!((lo.to_f64() - v).abs() < 1e-12);
    }

    #[test]
    fn corollary_examples() {
        assert_eq!(corollary_bounds_r3(73).unwrap(), (bi(11), bi(19)));
        assert_eq!(corollary_bounds_r3(4).unwrap(), (bi(-1), bi(1)));
        assert_eq!(corollary_bounds_r3(49).unwrap(), (bi(6), bi(13)));
        assert_eq!(corollary_bounds_r3(5).unwrap_err(), Error::BadFieldForCubic(5));
    }

    #[test]
    fn report_for_worked_example() {
        let f = FieldSpec::prime(73).unwrap();
        let r = CountReport::verified(&f, 35, 3, true).unwrap();
        assert_eq!(r.closed_count, bi(16));
        assert_eq!(r.brute_count, Some(16));
        assert_eq!(r.criterion_count, Some(16));
        assert_eq!((r.epsilon1, r.epsilon2), (Some(1), Some(1)));
        assert_eq!(r.s_k, Some(bi(-7)));
        assert!(r.within_mz());
        assert_eq!(r.within_corollary(), Some(true));
        assert!(r.consistent());
        let listed: Vec<u64> = r.a_values.unwrap().iter().map(|a| f.encode(a)).collect();
        assert_eq!(listed, vec![0, 2, 4, 16, 18, 21, 22, 30, 32, 33, 37, 45, 55, 57, 68, 71]);
    }

    #[test]
    fn reports_match_enumeration_on_small_fields() {
        for (p, k) in [(2u64, 2u32), (7, 1), (13, 1), (2, 4), (5, 2)] {
            let f = FieldSpec::new(p, k, None).unwrap();
            let q = f.q();
            for r in [2u64, 3] {
                if (q - 1) % r != 0 || (r == 2 && p == 2) {
                    continue;
                }
                for n in 1..q {
                    if arith::gcd(n, (q - 1) / r) != 1 {
                        continue;
                    }
                    let rep = CountReport::closed(q, n, r).unwrap();
                    let list = enumerate_perm_binomials(&f, n, r, Method::BruteForce).unwrap();
                    assert_eq!(rep.closed_count, BigInt::from(list.len()), "q={q} n={n} r={r}");
                    assert!(rep.within_mz());
                    assert_ne!(rep.within_corollary(), Some(false));
                }
            }
        }
    }
}
