//! Exact real numbers of the form `(a + b sqrt(d)) / c`.
//!
//! Floors and ceilings are exact: `floor(b sqrt(d))` comes from an integer
//! square root, and adding the integer `a` or dividing by the positive
//! integer `c` commutes with taking the floor.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticSurd {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigUint,
}

impl QuadraticSurd {
    /// `(a + b sqrt(d)) / c`; `c` must be nonzero.
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, d: impl Into<BigUint>, c: impl Into<BigInt>) -> Self {
        let (mut a, mut b, mut c) = (a.into(), b.into(), c.into());
        assert!(!c.is_zero(), "zero denominator");
        if c.is_negative() {
            a = -a;
            b = -b;
            c = -c;
        }
        QuadraticSurd { a, b, c, d: d.into() }
    }

    /// `floor(b sqrt(d))`.
    fn floor_radical(&self) -> BigInt {
        let b2d = BigInt::from_biguint(Sign::Plus, self.b.magnitude() * self.b.magnitude() * &self.d);
        let s = b2d.sqrt();
        if !self.b.is_negative() {
            s
        } else if &s * &s == b2d {
            -s
        } else {
            -s - 1
        }
    }

    pub fn floor(&self) -> BigInt {
        (&self.a + self.floor_radical()).div_floor(&self.c)
    }

    pub fn ceil(&self) -> BigInt {
        -self.negated().floor()
    }

    pub fn negated(&self) -> Self {
        QuadraticSurd { a: -&self.a, b: -&self.b, c: self.c.clone(), d: self.d.clone() }
    }

    /// `self * factor`, exact.
    pub fn scaled(&self, factor: &BigInt) -> Self {
        QuadraticSurd {
            a: &self.a * factor,
            b: &self.b * factor,
            c: self.c.clone(),
            d: self.d.clone(),
        }
    }

    /// Whether the value is rational (its radicand part vanishes or is a
    /// perfect square).
    pub fn is_rational(&self) -> bool {
        self.b.is_zero() || {
            let s = self.d.sqrt();
            &s * &s == self.d
        }
    }

    /// Compares with an integer exactly.
    pub fn cmp_int(&self, n: &BigInt) -> Ordering {
        let fl = self.floor();
        if &fl < n {
            Ordering::Less
        } else if &fl > n {
            Ordering::Greater
        } else if self.ceil() == *n {
            Ordering::Equal
        } else {
            Ordering::Greater
        }
    }

    /// Decimal string with `digits` fractional digits, rounded down.
    pub fn to_decimal_floor(&self, digits: u32) -> String {
        let scale = BigInt::from(10).pow(digits);
        format_scaled(&self.scaled(&scale).floor(), digits)
    }

    /// Decimal string with `digits` fractional digits, rounded up.
    pub fn to_decimal_ceil(&self, digits: u32) -> String {
        let scale = BigInt::from(10).pow(digits);
        format_scaled(&self.scaled(&scale).ceil(), digits)
    }

    pub fn to_f64(&self) -> f64 {
        self.to_decimal_floor(15).parse().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}*sqrt({}))/{}", self.a, self.b, self.d, self.c)
    }
}

/// Formats an integer `v` as `v / 10^digits`.
pub fn format_scaled(v: &BigInt, digits: u32) -> String {
    if digits == 0 {
        return v.to_string();
    }
    let scale = BigInt::from(10).pow(digits);
    let neg = v.is_negative();
    let mag = v.abs();
    let (int, frac) = mag.div_rem(&scale);
    let frac = frac.to_string();
    format!(
        "{}{}.{}{}",
        if neg { "-" } else { "" },
        int,
        "0".repeat(digits as usize - frac.len()),
        frac
    )
}
