use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use super::poly::UniPoly;
use super::{Field, FieldError};

/// A simple extension `K[y]/(m(y))` of an arbitrary base field.
#[derive(Clone)]
pub struct Extension<K: Field> {
    inner: Arc<Inner<K>>,
}

struct Inner<K: Field> {
    base: K,
    /// low to high, monic
    minpoly: Vec<K::Elem>,
    generator: String,
    names: BTreeMap<String, Vec<K::Elem>>,
}

impl<K: Field> Extension<K> {
    pub fn new(base: K, minpoly: Vec<K::Elem>, generator: &str) -> Result<Self, FieldError> {
        if minpoly.len() < 3 || !base.is_one(minpoly.last().unwrap()) {
            return Err(FieldError::NonMonicMinpoly);
        }
        Ok(Self {
            inner: Arc::new(Inner { base, minpoly, generator: generator.to_string(), names: BTreeMap::new() }),
        })
    }

    pub fn with_named(&self, name: &str, value: Vec<K::Elem>) -> Self {
        let mut names = self.inner.names.clone();
        names.insert(name.to_string(), value);
        Self {
            inner: Arc::new(Inner {
                base: self.inner.base.clone(),
                minpoly: self.inner.minpoly.clone(),
                generator: self.inner.generator.clone(),
                names,
            }),
        }
    }

    pub fn base(&self) -> &K {
        &self.inner.base
    }

    pub fn ext_degree(&self) -> usize {
        self.inner.minpoly.len() - 1
    }

    pub fn minpoly(&self) -> &[K::Elem] {
        &self.inner.minpoly
    }

    pub fn generator(&self) -> Vec<K::Elem> {
        let mut v = vec![self.inner.base.zero(); self.ext_degree()];
        v[1] = self.inner.base.one();
        v
    }

    pub fn embed(&self, a: &K::Elem) -> Vec<K::Elem> {
        let mut v = vec![self.inner.base.zero(); self.ext_degree()];
        v[0] = a.clone();
        v
    }

    /// `a0 + a1*y` style construction from base coefficients.
    pub fn from_base_coeffs(&self, coeffs: &[K::Elem]) -> Vec<K::Elem> {
        let n = self.ext_degree();
        let mut c: Vec<K::Elem> = coeffs.to_vec();
        c.resize(n.max(c.len()), self.inner.base.zero());
        self.reduce(c)
    }

    fn reduce(&self, mut c: Vec<K::Elem>) -> Vec<K::Elem> {
        let k = &self.inner.base;
        let n = self.ext_degree();
        let m = &self.inner.minpoly;
        for top in (n..c.len()).rev() {
            if k.is_zero(&c[top]) {
                continue;
            }
            let lead = c[top].clone();
            for i in 0..n {
                c[top - n + i] = k.sub(&c[top - n + i], &k.mul(&lead, &m[i]));
            }
        }
        c.truncate(n);
        c.resize(n, k.zero());
        c
    }

    /// Evaluates `a` as a polynomial in the generator at `x`.
    pub fn eval_at(&self, a: &[K::Elem], x: &[K::Elem]) -> Vec<K::Elem> {
        let mut acc = self.zero();
        for c in a.iter().rev() {
            acc = self.mul(&acc, &x.to_vec());
            acc = self.add(&acc, &self.embed(c));
        }
        acc
    }
}

impl<K: Field> fmt::Debug for Extension<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}[{}]/({:?})", self.inner.base, self.inner.generator, self.inner.minpoly)
    }
}

impl<K: Field> Field for Extension<K> {
    type Elem = Vec<K::Elem>;

    fn zero(&self) -> Self::Elem {
        vec![self.inner.base.zero(); self.ext_degree()]
    }

    fn one(&self) -> Self::Elem {
        self.embed(&self.inner.base.one())
    }

    fn from_int(&self, n: &BigInt) -> Self::Elem {
        self.embed(&self.inner.base.from_int(n))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.inner.base.add(x, y)).collect()
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.inner.base.sub(x, y)).collect()
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| self.inner.base.neg(x)).collect()
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let k = &self.inner.base;
        let n = self.ext_degree();
        let mut prod = vec![k.zero(); 2 * n - 1];
        for (i, x) in a.iter().enumerate() {
            if k.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !k.is_zero(y) {
                    prod[i + j] = k.add(&prod[i + j], &k.mul(x, y));
                }
            }
        }
        self.reduce(prod)
    }

    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem, FieldError> {
        if self.is_zero(a) {
            return Err(FieldError::DivisionByZero);
        }
        let k = &self.inner.base;
        let p = UniPoly::new(k, a.clone());
        let m = UniPoly::new(k, self.inner.minpoly.clone());
        let inv = p.inverse_mod(k, &m).map_err(|_| FieldError::ZeroDivisorEncountered(format!("{self:?}")))?;
        Ok(self.from_base_coeffs(&inv.coeffs))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.iter().all(|x| self.inner.base.is_zero(x))
    }

    fn characteristic(&self) -> u64 {
        self.inner.base.characteristic()
    }

    fn degree(&self) -> usize {
        self.inner.base.degree() * self.ext_degree()
    }

    fn order(&self) -> Option<u64> {
        let q = self.inner.base.order()?;
        q.checked_pow(self.ext_degree() as u32)
    }

    fn elements(&self) -> Option<Vec<Self::Elem>> {
        let base = self.inner.base.elements()?;
        let mut out: Vec<Self::Elem> = vec![Vec::new()];
        for _ in 0..self.ext_degree() {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    base.iter().map(move |b| {
                        let mut v = prefix.clone();
                        v.push(b.clone());
                        v
                    })
                })
                .collect();
        }
        Some(out)
    }

    fn named(&self, name: &str) -> Option<Self::Elem> {
        if name == self.inner.generator {
            return Some(self.generator());
        }
        if let Some(v) = self.inner.names.get(name) {
            return Some(v.clone());
        }
        self.inner.base.named(name).map(|b| self.embed(&b))
    }

    fn descriptor(&self) -> String {
        let m: Vec<String> = self.inner.minpoly.iter().map(|c| self.inner.base.to_json(c).to_string()).collect();
        format!("{}[{}]/({})", self.inner.base.descriptor(), self.inner.generator, m.join(","))
    }

    fn weight(&self, a: &Self::Elem) -> usize {
        a.iter().map(|x| self.inner.base.weight(x)).sum()
    }

    fn to_json(&self, a: &Self::Elem) -> serde_json::Value {
        serde_json::Value::Array(a.iter().map(|x| self.inner.base.to_json(x)).collect())
    }

    fn from_json(&self, v: &serde_json::Value) -> Result<Self::Elem, FieldError> {
        let arr = v.as_array().ok_or_else(|| FieldError::Decode(v.to_string()))?;
        if arr.len() != self.ext_degree() {
            return Err(FieldError::Decode(v.to_string()));
        }
        arr.iter().map(|x| self.inner.base.from_json(x)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    #[test]
    fn f9_has_nine_elements_and_inverses() {
        let f3 = PrimeField::new(3).unwrap();
        let f9 = Extension::new(f3, vec![1, 0, 1], "i").unwrap();
        let elems = f9.elements().unwrap();
        assert_eq!(elems.len(), 9);
        assert_eq!(elems[0], vec![0, 0]);
        assert_eq!(elems[1], vec![0, 1]);
        for e in elems.iter().filter(|e| !f9.is_zero(e)) {
            assert_eq!(f9.mul(e, &f9.inv(e).unwrap()), f9.one());
        }
        assert_eq!(f9.order(), Some(9));
        assert_eq!(f9.degree(), 2);
    }

    #[test]
    fn reducible_minpoly_surfaces_zero_divisor() {
        let f5 = PrimeField::new(5).unwrap();
        let bad = Extension::new(f5, vec![1, 0, 1], "i").unwrap();
        // y - 2 divides y^2 + 1 over F_5
        let e = vec![3, 1];
        assert!(matches!(bad.inv(&e), Err(FieldError::ZeroDivisorEncountered(_))));
    }
}
