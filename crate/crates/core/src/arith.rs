//! Small-integer number theory helpers: primality, factoring, modular powers.
//!
//! Everything here works on `u64` and is meant for the sizes this crate
//! deals with (field orders up to 2^40, primes up to 2^32). Trial division
//! is plenty at that scale.

use num_integer::Integer;

/// Deterministic primality test by trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 || n % 3 == 0 {
        return false;
    }
    let mut d = 5u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 || n % (d + 2) == 0 {
            return false;
        }
        d += 6;
    }
    true
}

/// Prime factorisation as `(prime, exponent)` pairs in ascending order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let mut push = |p: u64, n: &mut u64| {
        let mut e = 0;
        while *n % p == 0 {
            *n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    };
    push(2, &mut n);
    push(3, &mut n);
    let mut d = 5u64;
    while d.saturating_mul(d) <= n {
        push(d, &mut n);
        push(d + 2, &mut n);
        d += 6;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Distinct prime divisors of `n`.
pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    for (p, e) in factorize(n) {
        let len = divs.len();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs.sort_unstable();
    divs
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let e = (a as i128).extended_gcd(&(m as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m as i128) as u64)
}

/// Splits `q` as `p^k` with `p` prime, if possible.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    match factorize(q).as_slice() {
        [(p, k)] => Some((*p, *k)),
        _ => None,
    }
}

/// All prime powers `q` with `2 <= q <= max`, ascending.
pub fn prime_powers_up_to(max: u64) -> Vec<u64> {
    (2..=max).filter(|&q| prime_power(q).is_some()).collect()
}

/// Floor of the square root.
pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u64;
    while x.saturating_mul(x) > n {
        x -= 1;
    }
    while (x + 1).saturating_mul(x + 1) <= n {
        x += 1;
    }
    x
}

/// `binom(n, k) mod p` for a prime `p > n`.
pub fn binomial_mod(n: u64, k: u64, p: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..k {
        num = mul_mod(num, (n - i) % p, p);
        den = mul_mod(den, (i + 1) % p, p);
    }
    mul_mod(num, inv_mod(den, p).expect("denominator coprime to p"), p)
}

/// Whether `gcd(n, (p^k - 1) / r) == 1`, without forming `p^k`.
///
/// Requires `r | p^k - 1`. For each prime `l | n` the residue of
/// `(p^k - 1) / r` modulo `l` is read off `p^k mod r*l`.
pub fn coprime_to_cofactor(n: u64, p: u64, k: u64, r: u64) -> bool {
    if n == 0 {
        return false;
    }
    prime_divisors(n).into_iter().all(|l| {
        let m = r * l;
        let t = (pow_mod(p, k, m) + m - 1) % m;
        debug_assert_eq!(t % r, 0);
        (t / r) % l != 0
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_below_fifty() {
        let got: Vec<u64> = (0..50).filter(|&n| is_prime(n)).collect();
        assert_eq!(got, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]);
    }

    #[test]
    fn factorization_roundtrip() {
        for n in 1..2000u64 {
            let prod: u64 = factorize(n).iter().map(|&(p, e)| p.pow(e)).product();
            assert_eq!(prod, n);
        }
        assert_eq!(factorize(72), vec![(2, 3), (3, 2)]);
    }

    #[test]
    fn divisors_of_72() {
        assert_eq!(divisors(72), vec![1, 2, 3, 4, 6, 8, 9, 12, 18, 24, 36, 72]);
    }

    #[test]
    fn inverse_mod_13() {
        assert_eq!(inv_mod(5, 13), Some(8));
        assert_eq!(inv_mod(4, 8), None);
    }

    #[test]
    fn prime_power_detection() {
        assert_eq!(prime_power(343), Some((7, 3)));
        assert_eq!(prime_power(64), Some((2, 6)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn binomials_small() {
        assert_eq!(binomial_mod(6, 4, 13), 15 % 13);
        assert_eq!(binomial_mod(36, 24, 73), {
            // Pascal's triangle mod 73 as an independent route
            let mut row = vec![1u64];
            for _ in 0..36 {
                let mut next = vec![1u64; row.len() + 1];
                for i in 1..row.len() {
                    next[i] = (row[i - 1] + row[i]) % 73;
                }
                row = next;
            }
            row[24]
        });
    }

    #[test]
    fn cofactor_gcd_matches_direct() {
        for p in [2u64, 5, 7, 13, 73] {
            for k in 1..8u64 {
                let q = p.pow(k as u32);
                if (q - 1) % 3 != 0 {
                    continue;
                }
                for n in 1..60u64 {
                    let direct = gcd(n, (q - 1) / 3) == 1;
                    assert_eq!(coprime_to_cofactor(n, p, k, 3), direct, "p={p} k={k} n={n}");
                }
            }
        }
    }

    #[test]
    fn isqrt_edges() {
        for n in 0..10_000u64 {
            let s = isqrt(n);
            assert!(s * s <= n && (s + 1) * (s + 1) > n);
        }
    }
}
