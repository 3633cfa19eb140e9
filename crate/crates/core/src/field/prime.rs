use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{is_prime, Field, FieldError};

/// The prime field `Z/p` with residues stored in `[0, p)`.
#[derive(Clone)]
pub struct PrimeField {
    inner: Arc<Inner>,
}

struct Inner {
    p: u64,
    names: BTreeMap<String, u64>,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if !is_prime(p) || p >= 1 << 31 {
            return Err(FieldError::CompositeModulus(p));
        }
        Ok(Self { inner: Arc::new(Inner { p, names: BTreeMap::new() }) })
    }

    pub fn modulus(&self) -> u64 {
        self.inner.p
    }

    /// Returns a handle with `name` bound to `value`.
    pub fn with_named(&self, name: &str, value: u64) -> Self {
        let mut names = self.inner.names.clone();
        names.insert(name.to_string(), value % self.inner.p);
        Self { inner: Arc::new(Inner { p: self.inner.p, names }) }
    }

    pub fn elem(&self, v: i64) -> u64 {
        v.rem_euclid(self.inner.p as i64) as u64
    }
}

impl fmt::Debug for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.inner.p)
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn from_int(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.inner.p)).to_u64().expect("reduced residue")
    }

    fn from_i64(&self, n: i64) -> u64 {
        self.elem(n)
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.inner.p {
            s - self.inner.p
        } else {
            s
        }
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.inner.p - b
        }
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.inner.p - a
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.inner.p
    }

    fn inv(&self, a: &u64) -> Result<u64, FieldError> {
        if *a == 0 {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.pow_u(a, self.inner.p - 2))
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn characteristic(&self) -> u64 {
        self.inner.p
    }

    fn degree(&self) -> usize {
        1
    }

    fn order(&self) -> Option<u64> {
        Some(self.inner.p)
    }

    fn elements(&self) -> Option<Vec<u64>> {
        Some((0..self.inner.p).collect())
    }

    fn named(&self, name: &str) -> Option<u64> {
        self.inner.names.get(name).copied()
    }

    fn descriptor(&self) -> String {
        format!("F{}", self.inner.p)
    }

    fn to_json(&self, a: &u64) -> serde_json::Value {
        serde_json::Value::from(*a)
    }

    fn from_json(&self, v: &serde_json::Value) -> Result<u64, FieldError> {
        match v.as_u64() {
            Some(x) if x < self.inner.p => Ok(x),
            _ => Err(FieldError::Decode(v.to_string())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composite_modulus() {
        assert_eq!(PrimeField::new(91).unwrap_err(), FieldError::CompositeModulus(91));
        assert!(PrimeField::new(73).is_ok());
    }

    #[test]
    fn tenth_power_is_minus_one() {
        let f = PrimeField::new(73).unwrap();
        assert_eq!(f.pow_u(&10, 4), 72);
        assert_eq!(f.pow_u(&10, 8), 1);
        assert_eq!(f.inv(&1).unwrap(), 1);
        assert_eq!(f.inv(&0), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn negative_integers_reduce() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.from_i64(-1), 6);
        assert_eq!(f.from_int(&BigInt::from(-15)), 6);
        assert_eq!(f.rational(1, 3).unwrap(), 5);
    }
}
