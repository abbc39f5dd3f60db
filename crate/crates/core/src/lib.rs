//! Permutation binomials `x^n (x^((q-1)/r) + a)` over finite fields.
//!
//! Counts for `r = 2` and `r = 3` are available in closed form and are
//! cross-checked against brute force, character criteria, the Wan-Lidl
//! criterion and elliptic-curve point counts.

pub mod arith;
pub mod chars;
pub mod closed;
pub mod contfrac;
pub mod curve;
pub mod error;
pub mod field;
pub mod fixed;
pub mod perm;
pub mod sharpness;
pub mod surd;

pub use error::{Error, Result};
pub use field::{FieldElement, FieldSpec};
pub use perm::{enumerate_perm_binomials, BinomialCase, Method, Polynomial};

/// Builds `F_{p^k}`, with the first irreducible modulus in encoding order
/// unless one is given.
pub fn make_field(p: u64, k: u32, modulus: Option<&[u64]>) -> Result<FieldSpec> {
    FieldSpec::new(p, k, modulus)
}
