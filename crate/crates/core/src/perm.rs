//! Permutation tests for polynomials over `F_q`.
//!
//! Three independent routes decide whether `x^n (x^{(q-1)/r} + a)` permutes
//! the field: walking the whole value set, the Wan-Lidl index criterion, and
//! the character criteria specific to `r = 2` and `r = 3`.

use std::fmt;
use std::str::FromStr;

use crate::arith;
use crate::chars::{self, CharTable, CubicChar, QuadChar};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

/// Sparse polynomial over `F_q`: ascending exponents, nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    terms: Vec<(u64, FieldElement)>,
}

impl Polynomial {
    /// Collects terms, merging equal exponents and dropping zeros.
    pub fn new(spec: &FieldSpec, terms: impl IntoIterator<Item = (u64, FieldElement)>) -> Self {
        let mut raw: Vec<(u64, FieldElement)> = terms.into_iter().collect();
        raw.sort_by_key(|(e, _)| *e);
        let mut out: Vec<(u64, FieldElement)> = Vec::with_capacity(raw.len());
        for (e, c) in raw {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc = spec.add(lc, &c),
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Polynomial { terms: out }
    }

    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn monomial(spec: &FieldSpec, n: u64) -> Self {
        Polynomial::new(spec, [(n, spec.one())])
    }

    /// `x^n (x^{(q-1)/r} + a)`, with exponents folded below `q` so that it
    /// defines the same map on `F_q`.
    pub fn binomial(spec: &FieldSpec, n: u64, r: u64, a: &FieldElement) -> Self {
        let e = (spec.q() - 1) / r;
        Polynomial::new(spec, [(n + e, spec.one()), (n, a.clone())]).reduce_exponents(spec)
    }

    pub fn terms(&self) -> &[(u64, FieldElement)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u64> {
        self.terms.last().map(|(e, _)| *e)
    }

    pub fn constant_term(&self, spec: &FieldSpec) -> FieldElement {
        match self.terms.first() {
            Some((0, c)) => c.clone(),
            _ => spec.zero(),
        }
    }

    /// Rewrites `x^e` with `e >= q` as `x^{((e-1) mod (q-1)) + 1}`, which
    /// agrees with it at every point of `F_q`.
    pub fn reduce_exponents(&self, spec: &FieldSpec) -> Self {
        let q = spec.q();
        Polynomial::new(
            spec,
            self.terms.iter().map(|(e, c)| {
                let e = if *e >= q { (e - 1) % (q - 1) + 1 } else { *e };
                (e, c.clone())
            }),
        )
    }

    pub fn eval(&self, spec: &FieldSpec, x: &FieldElement) -> FieldElement {
        self.terms.iter().fold(spec.zero(), |acc, (e, c)| {
            spec.add(&acc, &spec.mul(c, &spec.pow(x, *e)))
        })
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match *e {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})x")?,
                e => write!(f, "({c})x^{e}")?,
            }
        }
        Ok(())
    }
}

/// `f(x) = x^r_low h(x^{(q-1)/m}) + b` with `h(0) != 0` and `m` minimal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexForm {
    pub r_low: u64,
    pub h: Polynomial,
    pub m: u64,
    pub b: FieldElement,
}

impl IndexForm {
    pub fn recompose(&self, spec: &FieldSpec) -> Polynomial {
        let s = (spec.q() - 1) / self.m;
        Polynomial::new(
            spec,
            self.h
                .terms()
                .iter()
                .map(|(e, c)| (self.r_low + e * s, c.clone()))
                .chain(std::iter::once((0, self.b.clone()))),
        )
    }
}

fn check_degree(spec: &FieldSpec, f: &Polynomial) -> Result<()> {
    match f.degree() {
        Some(d) if d >= spec.q() => Err(Error::DegreeTooLarge { exponent: d, q: spec.q() }),
        _ => Ok(()),
    }
}

/// Walks `F_q` and checks that `f` takes `q` distinct values.
pub fn is_permutation_bruteforce(spec: &FieldSpec, f: &Polynomial) -> Result<bool> {
    let mut seen = Occupancy::new(spec.q());
    for x in spec.elements()? {
        if !seen.insert(spec.encode(&f.eval(spec, &x))) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn compute_index_form(spec: &FieldSpec, f: &Polynomial) -> Result<IndexForm> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    check_degree(spec, f)?;
    let b = f.constant_term(spec);
    let rest: Vec<&(u64, FieldElement)> = f.terms().iter().filter(|(e, _)| *e > 0).collect();
    let r_low = match rest.first() {
        Some((e, _)) => *e,
        None => return Err(Error::ConstantPolynomial),
    };
    let gaps = rest.iter().fold(0u64, |g, (e, _)| arith::gcd(g, e - r_low));
    let s = arith::gcd(spec.q() - 1, gaps);
    let h = Polynomial::new(spec, rest.iter().map(|(e, c)| ((e - r_low) / s, c.clone())));
    Ok(IndexForm { r_low, h, m: (spec.q() - 1) / s, b })
}

/// The Wan-Lidl criterion for a polynomial of index `m`.
///
/// Condition (iii) is evaluated on `f - b`; a constant shift does not change
/// whether `f` permutes the field.
pub fn wan_lidl_check(spec: &FieldSpec, form: &IndexForm) -> Result<bool> {
    let q = spec.q();
    if form.m == 0 || (q - 1) % form.m != 0 {
        return Err(Error::NonMinimalIndex { given: form.m, minimal: 0 });
    }
    let minimal = compute_index_form(spec, &form.recompose(spec))?;
    if minimal.m != form.m || minimal.r_low != form.r_low {
        return Err(Error::NonMinimalIndex { given: form.m, minimal: minimal.m });
    }
    let s = (q - 1) / form.m;
    if arith::gcd(form.r_low, s) != 1 {
        return Ok(false);
    }
    let alpha = spec.alpha();
    let zeta = spec.pow(alpha, s);
    let mut root = spec.one();
    for _ in 0..form.m {
        if form.h.eval(spec, &root).is_zero() {
            return Ok(false);
        }
        root = spec.mul(&root, &zeta);
    }
    // g(alpha^i)^s = alpha^{i r s} h(alpha^{i s})^s
    let mut seen = std::collections::HashSet::with_capacity(form.m as usize);
    let mut x = spec.one();
    for _ in 0..form.m {
        let hx = form.h.eval(spec, &spec.pow(&x, s));
        let g = spec.mul(&spec.pow(&x, form.r_low), &hx);
        if !seen.insert(spec.pow(&g, s)) {
            return Ok(false);
        }
        x = spec.mul(&x, alpha);
    }
    Ok(true)
}

/// `x^n (x^{(q-1)/r} + a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinomialCase {
    pub n: u64,
    pub r: u64,
    pub a: FieldElement,
}

impl BinomialCase {
    pub fn new(spec: &FieldSpec, n: u64, r: u64, a: FieldElement) -> Result<Self> {
        check_binomial_shape(spec, n, r)?;
        Ok(BinomialCase { n, r, a })
    }

    pub fn polynomial(&self, spec: &FieldSpec) -> Polynomial {
        Polynomial::binomial(spec, self.n, self.r, &self.a)
    }
}

fn check_binomial_shape(spec: &FieldSpec, n: u64, r: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::ZeroExponent);
    }
    if r != 2 && r != 3 {
        return Err(Error::UnsupportedIndex(r));
    }
    if (spec.q() - 1) % r != 0 {
        return Err(Error::IndexNotDividing { r, q_minus_1: spec.q() - 1 });
    }
    Ok(())
}

fn check_gcd(spec: &FieldSpec, n: u64, r: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::ZeroExponent);
    }
    if arith::gcd(n, (spec.q() - 1) / r) != 1 {
        return Err(Error::GcdViolation { n, r });
    }
    Ok(())
}

fn sign_of_n_plus_1(n: u64) -> QuadChar {
    if n % 2 == 1 {
        QuadChar::Plus
    } else {
        QuadChar::Minus
    }
}

/// `x^n (x^{(q-1)/2} + a)` permutes `F_q` iff `chi(a^2 - 1) = (-1)^{n+1}`,
/// given `gcd(n, (q-1)/2) = 1`.
pub fn criterion_r2(spec: &FieldSpec, n: u64, a: &FieldElement) -> Result<bool> {
    if spec.p() == 2 {
        return Err(Error::EvenCharacteristic);
    }
    check_gcd(spec, n, 2)?;
    let t = spec.sub(&spec.square(a), &spec.one());
    Ok(chars::quadratic_char(spec, &t)? == sign_of_n_plus_1(n))
}

/// `x^n (x^{(q-1)/3} + a)` permutes `F_q` iff `a` avoids `-1, -xi, -xi^2`
/// and none of the three cross-ratios has `eta = delta^{2n}`, given
/// `gcd(n, (q-1)/3) = 1`.
pub fn criterion_r3(spec: &FieldSpec, n: u64, a: &FieldElement) -> Result<bool> {
    let xi = chars::xi(spec)?;
    check_gcd(spec, n, 3)?;
    let xi2 = spec.square(&xi);
    let one_a = spec.add(&spec.one(), a);
    let xi_a = spec.add(&xi, a);
    let xi2_a = spec.add(&xi2, a);
    if one_a.is_zero() || xi_a.is_zero() || xi2_a.is_zero() {
        return Ok(false);
    }
    let forbidden = CubicChar::E((2 * (n % 3) % 3) as u8);
    let ratios = [
        spec.div(&xi_a, &one_a)?,
        spec.div(&one_a, &xi2_a)?,
        spec.div(&xi2_a, &xi_a)?,
    ];
    for lambda in &ratios {
        if chars::cubic_char(spec, lambda)? == forbidden {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Criterion,
    BruteForce,
    WanLidl,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Criterion, Method::BruteForce, Method::WanLidl];

    pub fn name(self) -> &'static str {
        match self {
            Method::Criterion => "criterion",
            Method::BruteForce => "bruteforce",
            Method::WanLidl => "wanlidl",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "criterion" => Ok(Method::Criterion),
            "bruteforce" | "brute" => Ok(Method::BruteForce),
            "wanlidl" | "wan-lidl" => Ok(Method::WanLidl),
            other => Err(format!("unknown method '{other}'")),
        }
    }
}

/// Every `a` (zero included) for which `x^n (x^{(q-1)/r} + a)` permutes
/// `F_q`, in enumeration order.
pub fn enumerate_perm_binomials(
    spec: &FieldSpec,
    n: u64,
    r: u64,
    method: Method,
) -> Result<Vec<FieldElement>> {
    check_binomial_shape(spec, n, r)?;
    spec.check_enumerable()?;
    let mut out = Vec::new();
    match method {
        Method::Criterion => {
            for a in spec.elements()? {
                let ok = if r == 2 {
                    criterion_r2(spec, n, &a)?
                } else {
                    criterion_r3(spec, n, &a)?
                };
                if ok {
                    out.push(a);
                }
            }
        }
        Method::BruteForce => {
            let eval = BinomialEvaluator::new(spec, n, r)?;
            for a in spec.elements()? {
                if eval.permutes(&a) {
                    out.push(a);
                }
            }
        }
        Method::WanLidl => {
            for a in spec.elements()? {
                let form = compute_index_form(spec, &Polynomial::binomial(spec, n, r, &a))?;
                if wan_lidl_check(spec, &form)? {
                    out.push(a);
                }
            }
        }
    }
    Ok(out)
}

/// Fixed-size bitset over `0..q`.
struct Occupancy {
    words: Vec<u64>,
}

impl Occupancy {
    fn new(size: u64) -> Self {
        Occupancy { words: vec![0; size.div_ceil(64) as usize] }
    }

    /// Returns false if the bit was already set.
    fn insert(&mut self, i: u64) -> bool {
        let (w, b) = ((i / 64) as usize, i % 64);
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }
}

/// Brute-force evaluator for `x^n (x^{(q-1)/r} + a)` with the powers of
/// every `x` tabulated once.
pub struct BinomialEvaluator<'a> {
    spec: &'a FieldSpec,
    x_pow_n: Vec<FieldElement>,
    /// Index into `roots` of `x^{(q-1)/r}`; `roots.len()` marks `x = 0`.
    root_class: Vec<u8>,
    roots: Vec<FieldElement>,
}

impl<'a> BinomialEvaluator<'a> {
    pub fn new(spec: &'a FieldSpec, n: u64, r: u64) -> Result<Self> {
        check_binomial_shape(spec, n, r)?;
        let e = (spec.q() - 1) / r;
        let mut roots: Vec<FieldElement> = Vec::with_capacity(r as usize);
        let mut x_pow_n = Vec::with_capacity(spec.q() as usize);
        let mut root_class = Vec::with_capacity(spec.q() as usize);
        for x in spec.elements()? {
            x_pow_n.push(spec.pow(&x, n));
            if x.is_zero() {
                root_class.push(u8::MAX);
                continue;
            }
            let y = spec.pow(&x, e);
            let idx = match roots.iter().position(|z| *z == y) {
                Some(i) => i,
                None => {
                    roots.push(y);
                    roots.len() - 1
                }
            };
            root_class.push(idx as u8);
        }
        let zero_class = roots.len() as u8;
        for c in root_class.iter_mut().filter(|c| **c == u8::MAX) {
            *c = zero_class;
        }
        Ok(BinomialEvaluator { spec, x_pow_n, root_class, roots })
    }

    pub fn permutes(&self, a: &FieldElement) -> bool {
        let spec = self.spec;
        let shifted: Vec<FieldElement> = self
            .roots
            .iter()
            .map(|z| spec.add(z, a))
            .chain(std::iter::once(a.clone()))
            .collect();
        let mut seen = Occupancy::new(spec.q());
        self.x_pow_n.iter().zip(&self.root_class).all(|(xn, &cls)| {
            let v = spec.mul(xn, &shifted[cls as usize]);
            seen.insert(spec.encode(&v))
        })
    }
}

/// Per-`a` character data for the criteria, shared across every `n`.
///
/// The value of the `r = 2` test depends on `n` only through its parity and
/// the `r = 3` test only through `2n mod 3`, so one pass over the field
/// answers every exponent.
pub struct CriterionProfile {
    r: u64,
    q: u64,
    chi_a2_minus_1: Vec<QuadChar>,
    /// `None` when `a` is one of `-1, -xi, -xi^2`.
    eta_ratios: Vec<Option<[u8; 3]>>,
}

impl CriterionProfile {
    pub fn new(spec: &FieldSpec, r: u64) -> Result<Self> {
        check_binomial_shape(spec, 1, r)?;
        let table = CharTable::new(spec)?;
        let mut chi_a2_minus_1 = Vec::new();
        let mut eta_ratios = Vec::new();
        if r == 2 {
            for a in spec.elements()? {
                let t = spec.sub(&spec.square(&a), &spec.one());
                chi_a2_minus_1.push(table.chi(spec.encode(&t))?);
            }
        } else {
            let xi = chars::xi(spec)?;
            let xi2 = spec.square(&xi);
            let eta = |x: &FieldElement| table.eta(spec.encode(x)).expect("q = 1 mod 3");
            for a in spec.elements()? {
                let e1 = eta(&spec.add(&spec.one(), &a));
                let ex = eta(&spec.add(&xi, &a));
                let ex2 = eta(&spec.add(&xi2, &a));
                let entry = match (e1, ex, ex2) {
                    (CubicChar::E(u), CubicChar::E(v), CubicChar::E(w)) => {
                        // eta(y/z) = eta(y) - eta(z) as exponents
                        Some([(v + 3 - u) % 3, (u + 3 - w) % 3, (w + 3 - v) % 3])
                    }
                    _ => None,
                };
                eta_ratios.push(entry);
            }
        }
        Ok(CriterionProfile { r, q: spec.q(), chi_a2_minus_1, eta_ratios })
    }

    /// Whether `a` (by enumeration index) passes the criterion for `n`.
    pub fn admits(&self, n: u64, index: u64) -> bool {
        if self.r == 2 {
            self.chi_a2_minus_1[index as usize] == sign_of_n_plus_1(n)
        } else {
            let forbidden = (2 * (n % 3) % 3) as u8;
            match self.eta_ratios[index as usize] {
                Some(ex) => ex.iter().all(|&e| e != forbidden),
                None => false,
            }
        }
    }

    pub fn admissible(&self, n: u64) -> Vec<u64> {
        (0..self.q).filter(|&i| self.admits(n, i)).collect()
    }

    pub fn count(&self, n: u64) -> u64 {
        (0..self.q).filter(|&i| self.admits(n, i)).count() as u64
    }
}
