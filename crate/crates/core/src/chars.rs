//! Quadratic and cubic multiplicative characters, kept as exponents.
//!
//! `chi` takes values in {-1, 0, 1}. The cubic character `eta` is stored as
//! an exponent of a fixed complex cube root of unity: `E(j)` means
//! `eta(a) = delta^j`, and `eta(a) = delta^j` exactly when
//! `a^{(q-1)/3} = xi^j` with `xi = alpha^{(q-1)/3}` for the canonical
//! primitive element `alpha` of the field.

use std::ops::Mul;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QuadChar {
    Zero,
    Plus,
    Minus,
}

impl QuadChar {
    pub fn value(self) -> i64 {
        match self {
            QuadChar::Zero => 0,
            QuadChar::Plus => 1,
            QuadChar::Minus => -1,
        }
    }
}

impl Mul for QuadChar {
    type Output = QuadChar;

    fn mul(self, rhs: QuadChar) -> QuadChar {
        match (self, rhs) {
            (QuadChar::Zero, _) | (_, QuadChar::Zero) => QuadChar::Zero,
            (a, b) if a == b => QuadChar::Plus,
            _ => QuadChar::Minus,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CubicChar {
    Zero,
    /// `delta^j` with `j` in `0..3`.
    E(u8),
}

impl CubicChar {
    pub fn exponent(self) -> Option<u8> {
        match self {
            CubicChar::Zero => None,
            CubicChar::E(j) => Some(j),
        }
    }

    /// `eta^2`, the other nontrivial cubic character.
    pub fn squared(self) -> CubicChar {
        self * self
    }

    /// `eta(a) + eta^2(a)` as an integer: 2 for a nonzero cube, -1 for a
    /// non-cube, 0 at zero.
    pub fn symmetric_sum(self) -> i64 {
        match self {
            CubicChar::Zero => 0,
            CubicChar::E(0) => 2,
            CubicChar::E(_) => -1,
        }
    }
}

impl Mul for CubicChar {
    type Output = CubicChar;

    fn mul(self, rhs: CubicChar) -> CubicChar {
        match (self, rhs) {
            (CubicChar::E(a), CubicChar::E(b)) => CubicChar::E((a + b) % 3),
            _ => CubicChar::Zero,
        }
    }
}

pub fn quadratic_char(spec: &FieldSpec, a: &FieldElement) -> Result<QuadChar> {
    if spec.p() == 2 {
        return Err(Error::EvenCharacteristic);
    }
    if a.is_zero() {
        return Ok(QuadChar::Zero);
    }
    let t = spec.pow(a, (spec.q() - 1) / 2);
    Ok(if t.is_one() { QuadChar::Plus } else { QuadChar::Minus })
}

/// The primitive cube root of unity `xi = alpha^{(q-1)/3}`.
pub fn xi(spec: &FieldSpec) -> Result<FieldElement> {
    if spec.q() % 3 != 1 {
        return Err(Error::BadFieldForCubic(spec.q()));
    }
    Ok(spec.pow(spec.alpha(), (spec.q() - 1) / 3))
}

pub fn cubic_char(spec: &FieldSpec, a: &FieldElement) -> Result<CubicChar> {
    let xi = xi(spec)?;
    if a.is_zero() {
        return Ok(CubicChar::Zero);
    }
    let t = spec.pow(a, (spec.q() - 1) / 3);
    if t.is_one() {
        Ok(CubicChar::E(0))
    } else if t == xi {
        Ok(CubicChar::E(1))
    } else {
        debug_assert_eq!(t, spec.mul(&xi, &xi));
        Ok(CubicChar::E(2))
    }
}

/// `eta^2(a)`.
pub fn cubic_char_sq(spec: &FieldSpec, a: &FieldElement) -> Result<CubicChar> {
    Ok(cubic_char(spec, a)?.squared())
}

/// `sum_{a in F_q} a^m` with `0^0 = 1`, by direct summation.
pub fn power_sum(spec: &FieldSpec, m: u64) -> Result<FieldElement> {
    let mut acc = spec.zero();
    for a in spec.elements()? {
        acc = spec.add(&acc, &spec.pow(&a, m));
    }
    Ok(acc)
}

/// Character values for every element, indexed by enumeration order.
///
/// Entries are `None` when the character does not exist for the field
/// (`chi` in characteristic 2, `eta` unless `q = 1 mod 3`).
#[derive(Clone, Debug)]
pub struct CharTable {
    chi: Option<Vec<QuadChar>>,
    eta: Option<Vec<CubicChar>>,
}

impl CharTable {
    pub fn new(spec: &FieldSpec) -> Result<Self> {
        spec.check_enumerable()?;
        let chi = (spec.p() != 2).then(|| {
            spec.elements()
                .expect("checked")
                .map(|a| quadratic_char(spec, &a).expect("odd characteristic"))
                .collect()
        });
        let eta = (spec.q() % 3 == 1).then(|| {
            spec.elements()
                .expect("checked")
                .map(|a| cubic_char(spec, &a).expect("q = 1 mod 3"))
                .collect()
        });
        Ok(CharTable { chi, eta })
    }

    pub fn chi(&self, index: u64) -> Result<QuadChar> {
        self.chi
            .as_ref()
            .map(|t| t[index as usize])
            .ok_or(Error::EvenCharacteristic)
    }

    pub fn eta(&self, index: u64) -> Option<CubicChar> {
        self.eta.as_ref().map(|t| t[index as usize])
    }

    pub fn chi_values(&self) -> Option<&[QuadChar]> {
        self.chi.as_deref()
    }

    pub fn eta_values(&self) -> Option<&[CubicChar]> {
        self.eta.as_deref()
    }
}
