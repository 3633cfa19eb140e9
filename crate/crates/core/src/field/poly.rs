//! Dense univariate polynomials over a [`Field`], coefficients low to high.

use super::{Field, FieldError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly<E> {
    pub coeffs: Vec<E>,
}

impl<E: Clone> UniPoly<E> {
    pub fn new<F: Field<Elem = E>>(field: &F, mut coeffs: Vec<E>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval<F: Field<Elem = E>>(&self, field: &F, x: &E) -> E {
        let mut acc = field.zero();
        for c in self.coeffs.iter().rev() {
            acc = field.add(&field.mul(&acc, x), c);
        }
        acc
    }

    pub fn mul<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self { coeffs: Vec::new() };
        }
        let mut out = vec![field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if field.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = field.add(&out[i + j], &field.mul(a, b));
            }
        }
        Self::new(field, out)
    }

    pub fn sub<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = field.zero();
        let out = (0..n)
            .map(|i| field.sub(self.coeffs.get(i).unwrap_or(&z), other.coeffs.get(i).unwrap_or(&z)))
            .collect();
        Self::new(field, out)
    }

    /// Euclidean division.
    pub fn divrem<F: Field<Elem = E>>(&self, field: &F, d: &Self) -> Result<(Self, Self), FieldError> {
        let dd = d.degree().ok_or(FieldError::DivisionByZero)?;
        let lead_inv = field.inv(&d.coeffs[dd])?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Self { coeffs: Vec::new() }, Self::new(field, r)));
        }
        let mut q = vec![field.zero(); r.len() - dd];
        for k in (dd..r.len()).rev() {
            let c = field.mul(&r[k], &lead_inv);
            if field.is_zero(&c) {
                continue;
            }
            for (i, di) in d.coeffs.iter().enumerate() {
                r[k - dd + i] = field.sub(&r[k - dd + i], &field.mul(&c, di));
            }
            q[k - dd] = c;
        }
        r.truncate(dd);
        Ok((Self::new(field, q), Self::new(field, r)))
    }

    /// Inverse of `self` modulo `m`. A nontrivial common factor means `m` is
    /// reducible, reported as [`FieldError::ZeroDivisorEncountered`].
    pub fn inverse_mod<F: Field<Elem = E>>(&self, field: &F, m: &Self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        // invariant: s * self == r (mod m)
        let (mut r0, mut r1) = (m.clone(), self.divrem(field, m)?.1);
        let (mut s0, mut s1) = (Self { coeffs: Vec::new() }, Self::new(field, vec![field.one()]));
        if r1.is_zero() {
            return Err(FieldError::ZeroDivisorEncountered(format!("{:?}", field)));
        }
        while r1.degree() != Some(0) {
            if r1.is_zero() {
                return Err(FieldError::ZeroDivisorEncountered(format!("{:?}", field)));
            }
            let (q, r) = r0.divrem(field, &r1)?;
            let s = s0.sub(field, &q.mul(field, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            if r1.is_zero() {
                return Err(FieldError::ZeroDivisorEncountered(format!("{:?}", field)));
            }
        }
        let c = field.inv(&r1.coeffs[0])?;
        let scaled = s1.coeffs.iter().map(|x| field.mul(x, &c)).collect();
        Ok(Self::new(field, scaled).divrem(field, m)?.1)
    }

    /// Roots in the field with multiplicity, by exhaustive scan. Finite
    /// fields only.
    pub fn roots_by_scan<F: Field<Elem = E>>(&self, field: &F) -> Option<Vec<(E, usize)>> {
        let elems = field.elements()?;
        let mut out = Vec::new();
        let mut p = self.clone();
        for x in elems {
            let mut mult = 0;
            loop {
                if p.degree().unwrap_or(0) == 0 {
                    break;
                }
                if !field.is_zero(&p.eval(field, &x)) {
                    break;
                }
                let lin = Self::new(field, vec![field.neg(&x), field.one()]);
                p = p.divrem(field, &lin).ok()?.0;
                mult += 1;
            }
            if mult > 0 {
                out.push((x, mult));
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    #[test]
    fn inverse_mod_irreducible() {
        let f = PrimeField::new(3).unwrap();
        // x^2 + 1 is irreducible over F_3
        let m = UniPoly::new(&f, vec![1, 0, 1]);
        let a = UniPoly::new(&f, vec![1, 1]);
        let inv = a.inverse_mod(&f, &m).unwrap();
        let prod = a.mul(&f, &inv).divrem(&f, &m).unwrap().1;
        assert_eq!(prod.coeffs, vec![1]);
    }

    #[test]
    fn inverse_mod_reducible_reports_zero_divisor() {
        let f = PrimeField::new(5).unwrap();
        // x^2 + 1 = (x - 2)(x - 3) over F_5
        let m = UniPoly::new(&f, vec![1, 0, 1]);
        let a = UniPoly::new(&f, vec![3, 1]);
        assert!(matches!(a.inverse_mod(&f, &m), Err(FieldError::ZeroDivisorEncountered(_))));
    }

    #[test]
    fn roots_with_multiplicity() {
        let f = PrimeField::new(7).unwrap();
        // (x - 1)^2 (x - 3)
        let p = UniPoly::new(&f, vec![1, 5, 1]).mul(&f, &UniPoly::new(&f, vec![4, 1]));
        let roots = p.roots_by_scan(&f).unwrap();
        assert_eq!(roots, vec![(1, 2), (3, 1)]);
    }
}
