use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::UniPoly;
use super::rational::{rat_from_json, rat_to_json};
use super::{Field, FieldError, Rationals};

/// A simple number field `Q[x]/(m)` with `m` monic with integer
/// coefficients.
///
/// Elements are stored as an integer coefficient vector over a common
/// positive denominator, reduced so that the denominator is coprime to the
/// content of the numerator.
#[derive(Clone)]
pub struct NumberField {
    inner: Arc<Inner>,
}

struct Inner {
    /// low to high, including the leading 1
    minpoly: Vec<BigInt>,
    generator: String,
    names: BTreeMap<String, NfElem>,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NfElem {
    num: Vec<BigInt>,
    den: BigInt,
}

impl NfElem {
    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    /// Coefficients in the power basis.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num.iter().map(|n| BigRational::new(n.clone(), self.den.clone())).collect()
    }
}

impl fmt::Debug for NfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        write!(f, "(")?;
        for (i, c) in self.num.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*g")?,
                _ => write!(f, "{c}*g^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, ")")?;
        if !self.den.is_one() {
            write!(f, "/{}", self.den)?;
        }
        Ok(())
    }
}

impl NumberField {
    /// `minpoly` low to high; must be monic of degree at least 2.
    pub fn new(minpoly: &[i64], generator: &str) -> Result<Self, FieldError> {
        if minpoly.len() < 3 || *minpoly.last().unwrap() != 1 {
            return Err(FieldError::NonMonicMinpoly);
        }
        Ok(Self {
            inner: Arc::new(Inner {
                minpoly: minpoly.iter().map(|&c| BigInt::from(c)).collect(),
                generator: generator.to_string(),
                names: BTreeMap::new(),
            }),
        })
    }

    pub fn with_named(&self, name: &str, value: NfElem) -> Self {
        let mut names = self.inner.names.clone();
        names.insert(name.to_string(), value);
        Self {
            inner: Arc::new(Inner {
                minpoly: self.inner.minpoly.clone(),
                generator: self.inner.generator.clone(),
                names,
            }),
        }
    }

    pub fn ext_degree(&self) -> usize {
        self.inner.minpoly.len() - 1
    }

    pub fn minpoly(&self) -> &[BigInt] {
        &self.inner.minpoly
    }

    pub fn generator_name(&self) -> &str {
        &self.inner.generator
    }

    pub fn generator(&self) -> NfElem {
        let mut num = vec![BigInt::zero(); self.ext_degree()];
        num[1] = BigInt::one();
        NfElem { num, den: BigInt::one() }
    }

    /// `(c_0 + c_1 g + ...) / den` from small integers.
    pub fn from_ints(&self, coeffs: &[i64], den: i64) -> NfElem {
        let n = self.ext_degree();
        let mut big = vec![BigInt::zero(); 2 * n];
        for (i, c) in coeffs.iter().enumerate() {
            big[i] = BigInt::from(*c);
        }
        let mut num = self.reduce_poly(big);
        let mut d = BigInt::from(den);
        if d.is_negative() {
            d = -d;
            num.iter_mut().for_each(|x| *x = -&*x);
        }
        normalize(num, d)
    }

    pub fn from_rationals(&self, coeffs: &[BigRational]) -> NfElem {
        let n = self.ext_degree();
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut num = vec![BigInt::zero(); n];
        for (i, c) in coeffs.iter().enumerate() {
            num[i] = c.numer() * (&den / c.denom());
        }
        normalize(num, den)
    }

    fn reduce_poly(&self, mut c: Vec<BigInt>) -> Vec<BigInt> {
        let n = self.ext_degree();
        let m = &self.inner.minpoly;
        for k in (n..c.len()).rev() {
            if c[k].is_zero() {
                continue;
            }
            let lead = std::mem::take(&mut c[k]);
            for i in 0..n {
                if !m[i].is_zero() {
                    c[k - n + i] -= &lead * &m[i];
                }
            }
        }
        c.truncate(n);
        c.resize(n, BigInt::zero());
        c
    }

    /// Evaluates `a` (a polynomial in the generator) at `x`.
    pub fn eval_at(&self, a: &NfElem, x: &NfElem) -> NfElem {
        let mut acc = self.zero();
        for c in a.num.iter().rev() {
            acc = self.mul(&acc, x);
            acc = self.add(&acc, &self.from_int(c));
        }
        let d = self.from_int(&a.den);
        self.div(&acc, &d).expect("nonzero denominator")
    }

    fn minpoly_rational(&self) -> UniPoly<BigRational> {
        UniPoly::new(&Rationals, self.inner.minpoly.iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }
}

fn normalize(mut num: Vec<BigInt>, mut den: BigInt) -> NfElem {
    debug_assert!(den.is_positive());
    let mut g = den.clone();
    for c in &num {
        if g.is_one() {
            break;
        }
        g = g.gcd(c);
    }
    if !g.is_one() {
        num.iter_mut().for_each(|c| *c /= &g);
        den /= &g;
    }
    if num.iter().all(Zero::is_zero) {
        den = BigInt::one();
    }
    NfElem { num, den }
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[{}]/({:?})", self.inner.generator, self.inner.minpoly)
    }
}

impl Field for NumberField {
    type Elem = NfElem;

    fn zero(&self) -> NfElem {
        NfElem { num: vec![BigInt::zero(); self.ext_degree()], den: BigInt::one() }
    }

    fn one(&self) -> NfElem {
        self.from_int(&BigInt::one())
    }

    fn from_int(&self, n: &BigInt) -> NfElem {
        let mut num = vec![BigInt::zero(); self.ext_degree()];
        num[0] = n.clone();
        NfElem { num, den: BigInt::one() }
    }

    fn add(&self, a: &NfElem, b: &NfElem) -> NfElem {
        if a.den == b.den {
            let num = a.num.iter().zip(&b.num).map(|(x, y)| x + y).collect();
            return normalize(num, a.den.clone());
        }
        let num = a.num.iter().zip(&b.num).map(|(x, y)| x * &b.den + y * &a.den).collect();
        normalize(num, &a.den * &b.den)
    }

    fn sub(&self, a: &NfElem, b: &NfElem) -> NfElem {
        self.add(a, &self.neg(b))
    }

    fn neg(&self, a: &NfElem) -> NfElem {
        NfElem { num: a.num.iter().map(|x| -x).collect(), den: a.den.clone() }
    }

    fn mul(&self, a: &NfElem, b: &NfElem) -> NfElem {
        let n = self.ext_degree();
        let mut prod = vec![BigInt::zero(); 2 * n - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        normalize(self.reduce_poly(prod), &a.den * &b.den)
    }

    fn inv(&self, a: &NfElem) -> Result<NfElem, FieldError> {
        if self.is_zero(a) {
            return Err(FieldError::DivisionByZero);
        }
        let q = Rationals;
        let p = UniPoly::new(&q, a.coeffs());
        let inv = p
            .inverse_mod(&q, &self.minpoly_rational())
            .map_err(|_| FieldError::ZeroDivisorEncountered(format!("{self:?}")))?;
        Ok(self.from_rationals(&inv.coeffs))
    }

    fn is_zero(&self, a: &NfElem) -> bool {
        a.num.iter().all(Zero::is_zero)
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn degree(&self) -> usize {
        self.ext_degree()
    }

    fn order(&self) -> Option<u64> {
        None
    }

    fn elements(&self) -> Option<Vec<NfElem>> {
        None
    }

    fn named(&self, name: &str) -> Option<NfElem> {
        if name == self.inner.generator {
            return Some(self.generator());
        }
        self.inner.names.get(name).cloned()
    }

    fn descriptor(&self) -> String {
        let m: Vec<String> = self.inner.minpoly.iter().map(ToString::to_string).collect();
        format!("Q[{}]/({})", self.inner.generator, m.join(","))
    }

    fn weight(&self, a: &NfElem) -> usize {
        a.num.iter().map(|c| c.bits() as usize).sum::<usize>() + a.den.bits() as usize
    }

    fn to_json(&self, a: &NfElem) -> serde_json::Value {
        serde_json::Value::Array(a.coeffs().iter().map(rat_to_json).collect())
    }

    fn from_json(&self, v: &serde_json::Value) -> Result<NfElem, FieldError> {
        let arr = v.as_array().ok_or_else(|| FieldError::Decode(v.to_string()))?;
        if arr.len() != self.ext_degree() {
            return Err(FieldError::Decode(v.to_string()));
        }
        let coeffs = arr.iter().map(rat_from_json).collect::<Result<Vec<_>, _>>()?;
        Ok(self.from_rationals(&coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qi() -> NumberField {
        NumberField::new(&[1, 0, 1], "i").unwrap()
    }

    #[test]
    fn rejects_non_monic() {
        assert_eq!(NumberField::new(&[1, 0, 2], "x").unwrap_err(), FieldError::NonMonicMinpoly);
        assert_eq!(NumberField::new(&[1, 1], "x").unwrap_err(), FieldError::NonMonicMinpoly);
    }

    #[test]
    fn gaussian_arithmetic() {
        let k = qi();
        let i = k.generator();
        assert_eq!(k.mul(&i, &i), k.from_i64(-1));
        let a = k.from_ints(&[1, 1], 1);
        let inv = k.inv(&a).unwrap();
        assert_eq!(inv, k.from_ints(&[1, -1], 2));
        assert_eq!(k.mul(&a, &inv), k.one());
    }

    #[test]
    fn canonical_form_is_history_independent() {
        let k = qi();
        let a = k.from_ints(&[2, 4], 6);
        let b = k.from_ints(&[1, 2], 3);
        assert_eq!(a, b);
        let c = k.sub(&k.add(&a, &k.from_i64(5)), &k.from_i64(5));
        assert_eq!(c, b);
        assert_eq!(k.from_json(&k.to_json(&c)).unwrap(), b);
    }
}
