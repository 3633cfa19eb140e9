//! Exact fields: the rationals, prime fields, simple number fields and
//! simple extensions of any of these.
//!
//! Every algorithm in the crate is generic over [`Field`]. A field value is a
//! cheap-to-clone handle; elements are plain values in canonical form, so
//! equality of elements is structural equality.

mod automorphism;
mod extension;
mod number;
mod poly;
mod prime;
mod rational;
mod reduction;
pub mod standard;

pub use automorphism::{FieldAutomorphism, SimpleExtension};
pub use extension::Extension;
pub use number::{NfElem, NumberField};
pub use poly::UniPoly;
pub use prime::PrimeField;
pub use rational::Rationals;
pub use reduction::Reduction;

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    /// A nonzero element turned out not to be invertible, so the defining
    /// polynomial of the field is reducible.
    #[error("zero divisor encountered in {0}")]
    ZeroDivisorEncountered(String),
    #[error("minimal polynomial must be monic of degree >= 2")]
    NonMonicMinpoly,
    #[error("modulus {0} is not prime")]
    CompositeModulus(u64),
    #[error("element does not belong to this field")]
    OwnerMismatch,
    #[error("generator image is not a root of the minimal polynomial")]
    NotARoot,
    #[error("automorphism sends {name} to the wrong image")]
    ActionMismatch { name: String },
    #[error("denominator not invertible modulo {0}")]
    BadReduction(u64),
    #[error("cannot decode element: {0}")]
    Decode(String),
}

/// A field with exactly represented, canonically normalized elements.
pub trait Field: Clone + Debug + Send + Sync + 'static {
    type Elem: Clone + Eq + Ord + Hash + Debug + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: &BigInt) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem, FieldError>;

    /// 0 for characteristic zero.
    fn characteristic(&self) -> u64;
    /// Absolute degree over the prime field (or over the rationals).
    fn degree(&self) -> usize;
    /// Number of elements for finite fields.
    fn order(&self) -> Option<u64>;
    /// All elements in lexicographic order of their coefficient vectors.
    fn elements(&self) -> Option<Vec<Self::Elem>>;

    /// Distinguished elements such as `zeta8` or `fourth_root_2`.
    fn named(&self, name: &str) -> Option<Self::Elem>;
    /// Structural description; two handles describe the same tower iff the
    /// descriptors agree.
    fn descriptor(&self) -> String;

    fn to_json(&self, a: &Self::Elem) -> serde_json::Value;
    fn from_json(&self, v: &serde_json::Value) -> Result<Self::Elem, FieldError>;

    /// Rough size of an element, used to pick pivots that keep coefficient
    /// growth down. Finite fields return 0.
    fn weight(&self, _a: &Self::Elem) -> usize {
        0
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_int(&BigInt::from(n))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, FieldError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn square(&self, a: &Self::Elem) -> Self::Elem {
        self.mul(a, a)
    }

    /// `a^e` for any integer exponent; negative exponents invert first.
    fn pow(&self, a: &Self::Elem, e: i64) -> Result<Self::Elem, FieldError> {
        let base = if e < 0 { self.inv(a)? } else { a.clone() };
        Ok(self.pow_u(&base, e.unsigned_abs()))
    }

    fn pow_u(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut acc = self.one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.square(&b);
            }
        }
        acc
    }

    /// `n / d` as a field element.
    fn rational(&self, n: i64, d: i64) -> Result<Self::Elem, FieldError> {
        self.div(&self.from_i64(n), &self.from_i64(d))
    }

    fn require(&self, name: &str) -> Result<Self::Elem, MissingElement> {
        self.named(name).ok_or_else(|| MissingElement(name.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("distinguished element `{0}` is not available in this field")]
pub struct MissingElement(pub String);

/// Trial-division primality test; moduli here are tiny.
pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}
