//! Finite fields `F_{p^k}` in a polynomial basis.
//!
//! A [`FieldSpec`] fixes the prime, the degree, a monic irreducible modulus
//! and a canonical primitive element. Elements are coefficient vectors,
//! constant term first, every entry reduced into `[0, p)`.
//!
//! Enumeration order is the integer encoding `c_0 + c_1 p + ... + c_{k-1}
//! p^{k-1}`, so the constant coefficient varies fastest. The primitive
//! element `alpha` is the first element in that order whose multiplicative
//! order is `q - 1`, and the default modulus is the first monic irreducible
//! of degree `k` when the lower coefficients are read in the same order.

use std::fmt;

use smallvec::{smallvec, SmallVec};

use crate::arith;
use crate::error::{Error, Result};

/// Fields larger than this are refused by anything that walks every element,
/// unless the guard on the spec is raised.
pub const DEFAULT_ENUMERATION_GUARD: u64 = 1 << 20;

/// Upper limit on `q` for constructing a field at all. Keeps the trial
/// division in `factorize(q - 1)` cheap.
pub const MAX_FIELD_ORDER: u64 = 1 << 40;

type Coeffs = SmallVec<[u32; 4]>;
type Wide = SmallVec<[u64; 8]>;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    coeffs: Coeffs,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.len() == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}x")?,
                (i, 1) => write!(f, "x^{i}")?,
                (i, c) => write!(f, "{c}x^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct FieldSpec {
    p: u64,
    k: usize,
    q: u64,
    modulus: Vec<u64>,
    alpha: FieldElement,
    order_factors: Vec<u64>,
    guard: u64,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

impl FieldSpec {
    /// Builds `F_{p^k}`.
    ///
    /// A supplied modulus (constant term first, length `k + 1`) must be monic
    /// and irreducible; otherwise the first monic irreducible of degree `k`
    /// is used. For `k = 1` the default modulus is `x`.
    pub fn new(p: u64, k: u32, modulus: Option<&[u64]>) -> Result<Self> {
        if !arith::is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if k == 0 {
            return Err(Error::ZeroDegree);
        }
        let q = p
            .checked_pow(k)
            .filter(|&q| q <= MAX_FIELD_ORDER && p <= u32::MAX as u64)
            .ok_or(Error::FieldTooLarge { p, k })?;
        let k = k as usize;

        let modulus = match modulus {
            Some(m) => {
                if m.len() != k + 1 {
                    return Err(Error::DegreeMismatch {
                        expected: k,
                        got: m.len().saturating_sub(1),
                    });
                }
                let m: Vec<u64> = m.iter().map(|&c| c % p).collect();
                if m[k] != 1 {
                    return Err(Error::NonMonicModulus);
                }
                if !is_irreducible(&m, p) {
                    return Err(Error::ReducibleModulus);
                }
                m
            }
            None => first_irreducible(p, k),
        };

        let order_factors = arith::prime_divisors(q - 1);
        let mut spec = FieldSpec {
            p,
            k,
            q,
            modulus,
            alpha: FieldElement { coeffs: smallvec![0; k] },
            order_factors,
            guard: DEFAULT_ENUMERATION_GUARD,
        };
        spec.alpha = (1..q)
            .map(|e| spec.decode(e))
            .find(|x| spec.is_primitive(x))
            .expect("the multiplicative group of a finite field is cyclic");
        Ok(spec)
    }

    /// `F_p`.
    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1, None)
    }

    /// Replaces the enumeration guard.
    pub fn with_guard(mut self, guard: u64) -> Self {
        self.guard = guard;
        self
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn guard(&self) -> u64 {
        self.guard
    }

    /// Modulus coefficients, constant term first, length `k + 1`.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// The canonical primitive element.
    pub fn alpha(&self) -> &FieldElement {
        &self.alpha
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { coeffs: smallvec![0; self.k] }
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    /// Image of an integer under `Z -> F_p -> F_q`.
    pub fn from_int(&self, n: i64) -> FieldElement {
        let mut e = self.zero();
        e.coeffs[0] = n.rem_euclid(self.p as i64) as u32;
        e
    }

    /// Element from coefficients (constant first). Missing high coefficients
    /// are zero; values are reduced mod `p`.
    pub fn element(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() > self.k {
            return Err(Error::ForeignElement);
        }
        let mut e = self.zero();
        for (slot, &c) in e.coeffs.iter_mut().zip(coeffs) {
            *slot = (c % self.p) as u32;
        }
        Ok(e)
    }

    pub fn contains(&self, x: &FieldElement) -> bool {
        x.coeffs.len() == self.k && x.coeffs.iter().all(|&c| (c as u64) < self.p)
    }

    /// Position of `x` in enumeration order.
    pub fn encode(&self, x: &FieldElement) -> u64 {
        x.coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.p + c as u64)
    }

    pub fn decode(&self, mut n: u64) -> FieldElement {
        debug_assert!(n < self.q);
        let mut e = self.zero();
        for slot in e.coeffs.iter_mut() {
            *slot = (n % self.p) as u32;
            n /= self.p;
        }
        e
    }

    /// Fails unless every element may be visited under the current guard.
    pub fn check_enumerable(&self) -> Result<()> {
        if self.q > self.guard {
            Err(Error::TooLargeToEnumerate { q: self.q, guard: self.guard })
        } else {
            Ok(())
        }
    }

    /// All `q` elements in enumeration order.
    pub fn elements(&self) -> Result<impl Iterator<Item = FieldElement> + '_> {
        self.check_enumerable()?;
        Ok((0..self.q).map(move |n| self.decode(n)))
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.p;
        FieldElement {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| ((x as u64 + y as u64) % p) as u32)
                .collect(),
        }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.p;
        FieldElement {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| ((x as u64 + p - y as u64) % p) as u32)
                .collect(),
        }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        self.sub(&self.zero(), a)
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.p;
        let k = self.k;
        if k == 1 {
            let v = a.coeffs[0] as u64 * b.coeffs[0] as u64 % p;
            return FieldElement { coeffs: smallvec![v as u32] };
        }
        let mut prod: Wide = smallvec![0; 2 * k - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        // x^k = -(m_0 + m_1 x + ... + m_{k-1} x^{k-1})
        for top in (k..2 * k - 1).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            let neg_c = p - c;
            for j in 0..k {
                let idx = top - k + j;
                prod[idx] = (prod[idx] + neg_c * self.modulus[j]) % p;
            }
        }
        FieldElement {
            coeffs: prod[..k].iter().map(|&c| c as u32).collect(),
        }
    }

    pub fn square(&self, a: &FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    pub fn pow(&self, a: &FieldElement, mut exp: u64) -> FieldElement {
        let mut acc = self.one();
        let mut base = a.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.square(&base);
            }
        }
        acc
    }

    /// `a^exp` for any integer exponent; negative exponents go through the
    /// inverse.
    pub fn pow_signed(&self, a: &FieldElement, exp: i64) -> Result<FieldElement> {
        if exp >= 0 {
            Ok(self.pow(a, exp as u64))
        } else {
            Ok(self.pow(&self.inv(a)?, exp.unsigned_abs()))
        }
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.k == 1 {
            let v = arith::inv_mod(a.coeffs[0] as u64, self.p).expect("nonzero mod prime");
            return Ok(FieldElement { coeffs: smallvec![v as u32] });
        }
        Ok(self.pow(a, self.q - 2))
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Exact multiplicative order, found by stripping prime factors of `q - 1`.
    pub fn element_order(&self, x: &FieldElement) -> Result<u64> {
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        let mut order = self.q - 1;
        for &l in &self.order_factors {
            while order % l == 0 && self.pow(x, order / l).is_one() {
                order /= l;
            }
        }
        Ok(order)
    }

    pub fn is_primitive(&self, x: &FieldElement) -> bool {
        !x.is_zero()
            && self
                .order_factors
                .iter()
                .all(|&l| !self.pow(x, (self.q - 1) / l).is_one())
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 1 {
            write!(f, "F_{}", self.p)
        } else {
            write!(f, "F_{}^{}", self.p, self.k)
        }
    }
}

// Dense polynomials over F_p, constant term first, used only for the
// irreducibility test.

fn trim(a: &mut Vec<u64>) {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
}

fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = arith::inv_mod(m[dm], p).expect("nonzero leading coefficient");
    while r.len() > dm && !(r.len() == 1 && r[0] == 0) {
        let dr = r.len() - 1;
        let c = arith::mul_mod(r[dr], lead_inv, p);
        if c != 0 {
            for (j, &mj) in m.iter().enumerate() {
                let idx = dr - dm + j;
                r[idx] = (r[idx] + p - arith::mul_mod(c, mj, p)) % p;
            }
        }
        r.pop();
        trim(&mut r);
    }
    r
}

fn poly_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + arith::mul_mod(x, y, p)) % p;
        }
    }
    poly_rem(&prod, m, p)
}

fn poly_powmod(base: &[u64], mut exp: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = poly_rem(base, m, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = poly_mulmod(&acc, &b, m, p);
        }
        b = poly_mulmod(&b, &b, m, p);
        exp >>= 1;
    }
    acc
}

fn is_zero_poly(a: &[u64]) -> bool {
    a.iter().all(|&c| c == 0)
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !is_zero_poly(&b) {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Ben-Or style test: a monic `f` of degree `k` is irreducible iff
/// `gcd(f, x^{p^i} - x) = 1` for `1 <= i <= k/2`.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let k = f.len() - 1;
    if k == 1 {
        return true;
    }
    if f[0] == 0 {
        return false;
    }
    let x = vec![0u64, 1];
    let mut frob = x.clone();
    for _ in 0..k / 2 {
        frob = poly_powmod(&frob, p, f, p);
        let mut diff = frob.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        let g = poly_gcd(f, &diff, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

fn first_irreducible(p: u64, k: usize) -> Vec<u64> {
    if k == 1 {
        return vec![0, 1];
    }
    let count = p.pow(k as u32);
    (0..count)
        .map(|mut n| {
            let mut f = vec![0u64; k + 1];
            for c in f.iter_mut().take(k) {
                *c = n % p;
                n /= p;
            }
            f[k] = 1;
            f
        })
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}
