use num_bigint::BigInt;
use proptest::prelude::*;

use permbinom::arith;
use permbinom::chars::{cubic_char, power_sum, quadratic_char};
use permbinom::closed::{closed_count_r2, closed_count_r3, corollary_bounds_r3, masuda_zieve_bounds};
use permbinom::curve::{count_points_prime, trace_residue_mod_p, pi_trace, within_hasse};
use permbinom::perm::{compute_index_form, enumerate_perm_binomials, Method, Polynomial};
use permbinom::FieldSpec;

const FIELDS: &[(u64, u32)] = &[
    (3, 1),
    (5, 1),
    (7, 1),
    (13, 1),
    (2, 2),
    (2, 3),
    (2, 4),
    (3, 2),
    (5, 2),
    (3, 3),
    (7, 2),
];

fn cubic_orders() -> Vec<u64> {
    arith::prime_powers_up_to(5000).into_iter().filter(|q| q % 3 == 1).collect()
}

fn field(i: usize) -> FieldSpec {
    let (p, k) = FIELDS[i % FIELDS.len()];
    FieldSpec::new(p, k, None).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_axioms(i in 0usize..FIELDS.len(), x in any::<u64>(), y in any::<u64>(), z in any::<u64>()) {
        let f = field(i);
        let (a, b, c) = (f.decode(x % f.q()), f.decode(y % f.q()), f.decode(z % f.q()));
        prop_assert_eq!(f.add(&a, &b), f.add(&b, &a));
        prop_assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
        prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
        prop_assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
        prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
        prop_assert_eq!(f.add(&a, &f.neg(&a)), f.zero());
        if !a.is_zero() {
            prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
            prop_assert!(f.pow(&a, f.q() - 1).is_one());
        }
        prop_assert_eq!(f.decode(f.encode(&a)), a);
    }

    #[test]
    fn power_sum_case_split(i in 0usize..FIELDS.len(), m in 0u64..200) {
        let f = field(i);
        let m = m % (3 * (f.q() - 1) + 1);
        let s = power_sum(&f, m).unwrap();
        let expect = if m > 0 && m % (f.q() - 1) == 0 { f.neg(&f.one()) } else { f.zero() };
        prop_assert_eq!(s, expect);
    }

    #[test]
    fn characters_are_multiplicative(i in 0usize..FIELDS.len(), x in any::<u64>(), y in any::<u64>()) {
        let f = field(i);
        let (a, b) = (f.decode(x % f.q()), f.decode(y % f.q()));
        let ab = f.mul(&a, &b);
        if f.p() != 2 {
            let lhs = quadratic_char(&f, &ab).unwrap();
            prop_assert_eq!(lhs, quadratic_char(&f, &a).unwrap() * quadratic_char(&f, &b).unwrap());
        }
        if f.q() % 3 == 1 {
            let lhs = cubic_char(&f, &ab).unwrap();
            prop_assert_eq!(lhs, cubic_char(&f, &a).unwrap() * cubic_char(&f, &b).unwrap());
        }
    }

    #[test]
    fn index_form_recomposes(
        i in 0usize..FIELDS.len(),
        terms in proptest::collection::vec((any::<u64>(), any::<u64>()), 1..5),
    ) {
        let f = field(i);
        let poly = Polynomial::new(
            &f,
            terms.iter().map(|&(e, c)| (e % f.q(), f.decode(c % f.q()))),
        );
        if let Ok(form) = compute_index_form(&f, &poly) {
            prop_assert_eq!(form.recompose(&f), poly.clone());
            prop_assert_eq!((f.q() - 1) % form.m, 0);
            prop_assert!(!form.h.constant_term(&f).is_zero());
        }
    }

    #[test]
    fn three_routes_agree(i in 0usize..FIELDS.len(), n in 1u64..64, r in 2u64..4) {
        let f = field(i);
        let q = f.q();
        prop_assume!((q - 1) % r == 0 && !(r == 2 && f.p() == 2));
        let n = 1 + (n - 1) % (q - 1);
        prop_assume!(arith::gcd(n, (q - 1) / r) == 1);
        let a = enumerate_perm_binomials(&f, n, r, Method::Criterion).unwrap();
        let b = enumerate_perm_binomials(&f, n, r, Method::BruteForce).unwrap();
        let c = enumerate_perm_binomials(&f, n, r, Method::WanLidl).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(&a, &c);
        let closed = if r == 2 {
            BigInt::from(closed_count_r2(q, n).unwrap())
        } else {
            closed_count_r3(f.p(), f.k() as u64, n).unwrap()
        };
        prop_assert_eq!(closed, BigInt::from(a.len()));
    }

    #[test]
    fn point_count_congruence(pi in 0usize..16, a in any::<i64>(), b in any::<i64>()) {
        let primes = [5u64, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61];
        let p = primes[pi];
        let count = count_points_prime(p, a, b).unwrap();
        let rhs = trace_residue_mod_p(p, a, b).unwrap();
        prop_assert_eq!((count + p - 1) % p, rhs);
    }

    #[test]
    fn traces_obey_hasse(pi in 0usize..8, j in 0u64..400) {
        let p = [2u64, 5, 7, 13, 19, 31, 37, 73][pi];
        prop_assert!(within_hasse(p, j, &pi_trace(p, j).unwrap()));
    }

    #[test]
    fn corollary_window_contains_counts(q in prop::sample::select(cubic_orders()), n in 1u64..5000) {
        let (lo, hi) = corollary_bounds_r3(q).unwrap();
        let (_, mz_hi) = masuda_zieve_bounds(q, 3).unwrap();
        prop_assert!(hi <= mz_hi.floor());
        let (p, k) = arith::prime_power(q).unwrap();
        let n = 1 + (n - 1) % (q - 1);
        prop_assume!(arith::gcd(n, (q - 1) / 3) == 1);
        let t = closed_count_r3(p, k as u64, n).unwrap();
        prop_assert!(lo <= t && t <= hi);
    }
}
