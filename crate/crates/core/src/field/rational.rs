use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Field, FieldError};

/// The rational numbers, arbitrary precision.
#[derive(Clone, Default)]
pub struct Rationals;

impl fmt::Debug for Rationals {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Q")
    }
}

pub(crate) fn rat_to_json(a: &BigRational) -> serde_json::Value {
    if a.denom().is_one() {
        serde_json::Value::String(a.numer().to_string())
    } else {
        serde_json::Value::String(format!("{}/{}", a.numer(), a.denom()))
    }
}

pub(crate) fn rat_from_json(v: &serde_json::Value) -> Result<BigRational, FieldError> {
    let s = v.as_str().ok_or_else(|| FieldError::Decode(v.to_string()))?;
    let bad = || FieldError::Decode(s.to_string());
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.parse::<BigInt>().map_err(|_| bad())?, d.parse::<BigInt>().map_err(|_| bad())?),
        None => (s.parse::<BigInt>().map_err(|_| bad())?, BigInt::one()),
    };
    if d.is_zero() || d.is_negative() {
        return Err(bad());
    }
    let r = BigRational::new(n.clone(), d.clone());
    // canonical text only
    if r.numer() != &n || r.denom() != &d {
        return Err(bad());
    }
    Ok(r)
}

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_int(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> Result<BigRational, FieldError> {
        if a.is_zero() {
            Err(FieldError::DivisionByZero)
        } else {
            Ok(a.recip())
        }
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn degree(&self) -> usize {
        1
    }

    fn order(&self) -> Option<u64> {
        None
    }

    fn elements(&self) -> Option<Vec<BigRational>> {
        None
    }

    fn named(&self, _name: &str) -> Option<BigRational> {
        None
    }

    fn descriptor(&self) -> String {
        "Q".to_string()
    }

    fn weight(&self, a: &BigRational) -> usize {
        (a.numer().bits() + a.denom().bits()) as usize
    }

    fn to_json(&self, a: &BigRational) -> serde_json::Value {
        rat_to_json(a)
    }

    fn from_json(&self, v: &serde_json::Value) -> Result<BigRational, FieldError> {
        rat_from_json(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_field_has_no_roots_of_unity() {
        let q = Rationals;
        assert_eq!(q.degree(), 1);
        assert!(q.named("zeta8").is_none());
        assert_eq!(q.inv(&q.one()).unwrap(), q.one());
    }

    #[test]
    fn json_is_canonical() {
        let q = Rationals;
        let x = q.rational(-6, 4).unwrap();
        let v = q.to_json(&x);
        assert_eq!(v, serde_json::json!("-3/2"));
        assert_eq!(q.from_json(&v).unwrap(), x);
        assert!(q.from_json(&serde_json::json!("6/4")).is_err());
        assert!(q.from_json(&serde_json::json!("1/-2")).is_err());
    }
}
