//! Binary fixed-point reals: a `BigInt` `raw` stands for `raw / 2^bits`.
//!
//! Just enough transcendental support for the Frobenius angle: pi, arctan,
//! cosine and square roots. Each routine is accurate to a few units in the
//! last place at the requested precision; callers add guard bits.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

fn one(bits: u32) -> BigInt {
    BigInt::one() << bits
}

pub fn from_int(n: i64, bits: u32) -> BigInt {
    BigInt::from(n) << bits
}

pub fn mul(a: &BigInt, b: &BigInt, bits: u32) -> BigInt {
    (a * b) >> bits
}

pub fn div(a: &BigInt, b: &BigInt, bits: u32) -> BigInt {
    (a << bits) / b
}

/// Square root of a nonnegative fixed-point value.
pub fn sqrt(a: &BigInt, bits: u32) -> BigInt {
    (a << bits).sqrt()
}

/// `atan(1/n)` for an integer `n >= 2` by its alternating series.
fn atan_inv(n: u32, bits: u32) -> BigInt {
    let n = BigInt::from(n);
    let n2 = &n * &n;
    let mut term = one(bits) / &n;
    let mut sum = BigInt::zero();
    let mut k = 0u32;
    while !term.is_zero() {
        let t = &term / BigInt::from(2 * k + 1);
        if k % 2 == 0 {
            sum += t;
        } else {
            sum -= t;
        }
        term /= &n2;
        k += 1;
    }
    sum
}

/// Machin's formula.
pub fn pi(bits: u32) -> BigInt {
    let w = bits + 16;
    let v = (atan_inv(5, w) << 4) - (atan_inv(239, w) << 2);
    v >> 16
}

/// `atan(x)` for `|x| <= 1/8`, Taylor series.
fn atan_small(x: &BigInt, bits: u32) -> BigInt {
    let x2 = mul(x, x, bits);
    let mut power = x.clone();
    let mut sum = BigInt::zero();
    let mut k = 0u32;
    while !power.is_zero() {
        let t = &power / BigInt::from(2 * k + 1);
        if k % 2 == 0 {
            sum += t;
        } else {
            sum -= t;
        }
        power = mul(&power, &x2, bits);
        k += 1;
    }
    sum
}

/// `atan(x)` for any fixed-point `x`.
pub fn atan(x: &BigInt, bits: u32) -> BigInt {
    let w = bits + 32;
    let xw: BigInt = x << 32;
    let neg = xw.is_negative();
    let mut t = xw.abs();
    let one_w = one(w);
    let mut offset = BigInt::zero();
    let mut flip = false;
    if t > one_w {
        // atan(t) = pi/2 - atan(1/t)
        t = div(&one_w, &t, w);
        offset = pi(w) >> 1;
        flip = true;
    }
    // atan(t) = 2 atan(t / (1 + sqrt(1 + t^2)))
    let mut halvings = 0u32;
    let eighth = &one_w >> 3;
    while t > eighth {
        let root = sqrt(&(&one_w + mul(&t, &t, w)), w);
        t = div(&t, &(&one_w + root), w);
        halvings += 1;
    }
    let mut v = atan_small(&t, w) << halvings;
    if flip {
        v = offset - v;
    }
    if neg {
        v = -v;
    }
    v >> 32
}

/// `cos(x)`: reduce into `[-pi, pi]`, evaluate at `x / 2^12`, then apply
/// the double-angle formula twelve times.
pub fn cos(x: &BigInt, bits: u32) -> BigInt {
    const HALVINGS: u32 = 12;
    let w = bits + 2 * HALVINGS + 32;
    let xw: BigInt = x << (w - bits);
    let two_pi: BigInt = pi(w) << 1;
    let half: BigInt = &two_pi >> 1;
    let turns = (&xw + half).div_floor(&two_pi);
    let y = (xw - turns * &two_pi) >> HALVINGS;
    let y2 = mul(&y, &y, w);
    let mut term = one(w);
    let mut sum = BigInt::zero();
    let mut k = 0u32;
    while !term.is_zero() {
        if k % 2 == 0 {
            sum += &term;
        } else {
            sum -= &term;
        }
        term = mul(&term, &y2, w) / BigInt::from((2 * k + 1) * (2 * k + 2));
        k += 1;
    }
    for _ in 0..HALVINGS {
        sum = (mul(&sum, &sum, w) << 1) - one(w);
    }
    sum >> (w - bits)
}

/// Nearest `f64`, for display and coarse checks.
pub fn to_f64(a: &BigInt, bits: u32) -> f64 {
    let shift = bits.saturating_sub(60);
    let top: BigInt = a >> shift;
    let v: f64 = top.to_string().parse().unwrap_or(f64::NAN);
    v / 2f64.powi((bits - shift) as i32)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-14
    }

    #[test]
    fn pi_digits() {
        let p = pi(200);
        // 1e50 * pi, truncated
        let scaled: BigInt = (p * BigInt::from(10).pow(50)) >> 200;
        assert_eq!(
            scaled.to_string(),
            "314159265358979323846264338327950288419716939937510"
        );
    }

    #[test]
    fn atan_and_cos_against_f64() {
        let bits = 128;
        for x in [-20.0f64, -3.0, -1.0, -0.5, 0.0, 0.1, 0.7, 1.0, 2.5, 243f64.sqrt() / 7.0, 50.0] {
            let raw = BigInt::from((x * 2f64.powi(50)) as i64) << (bits - 50);
            assert!(close(to_f64(&atan(&raw, bits), bits), x.atan()), "atan {x}");
            assert!(close(to_f64(&cos(&raw, bits), bits), x.cos()), "cos {x}");
        }
    }

    #[test]
    fn atan_one_is_quarter_pi() {
        let bits = 300;
        let a = atan(&one(bits), bits);
        let quarter: BigInt = pi(bits) >> 2;
        let diff = (a - quarter).abs();
        assert!(diff < BigInt::from(1 << 8));
    }

    #[test]
    fn cos_pi_is_minus_one() {
        let bits = 256;
        let c = cos(&pi(bits), bits);
        let diff = (c + one(bits)).abs();
        assert!(diff < BigInt::from(1 << 12));
    }
}
