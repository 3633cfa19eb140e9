use std::collections::BTreeMap;
use std::fmt;

use crate::field::{Field, FieldError};

/// Exponents of `X^a Y^b Z^c`.
pub type Monomial = [u32; 3];

/// All monomials of total degree `d`, `X`-exponent descending, then `Y`.
pub fn monomials(d: u32) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(((d + 1) * (d + 2) / 2) as usize);
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            out.push([a, b, d - a - b]);
        }
    }
    out
}

/// A homogeneous polynomial in `X, Y, Z`; zero coefficients are never
/// stored.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Form<E> {
    degree: u32,
    terms: BTreeMap<Monomial, E>,
}

impl<E: fmt::Debug> fmt::Debug for Form<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c:?}")?;
            for (v, e) in ["X", "Y", "Z"].iter().zip(m) {
                match e {
                    0 => {}
                    1 => write!(f, "*{v}")?,
                    _ => write!(f, "*{v}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

impl<E: Clone + Eq + Ord> Form<E> {
    pub fn zero(degree: u32) -> Self {
        Self { degree, terms: BTreeMap::new() }
    }

    pub fn constant<F: Field<Elem = E>>(field: &F, c: E) -> Self {
        Self::from_terms(field, 0, vec![([0, 0, 0], c)])
    }

    pub fn one<F: Field<Elem = E>>(field: &F) -> Self {
        Self::constant(field, field.one())
    }

    /// Sums repeated monomials; panics on inhomogeneous input.
    pub fn from_terms<F: Field<Elem = E>>(field: &F, degree: u32, terms: Vec<(Monomial, E)>) -> Self {
        let mut map: BTreeMap<Monomial, E> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.iter().sum::<u32>(), degree, "inhomogeneous term {m:?}");
            let e = map.entry(m).or_insert_with(|| field.zero());
            *e = field.add(e, &c);
        }
        map.retain(|_, c| !field.is_zero(c));
        Self { degree, terms: map }
    }

    /// `a X + b Y + c Z`.
    pub fn linear<F: Field<Elem = E>>(field: &F, a: E, b: E, c: E) -> Self {
        Self::from_terms(field, 1, vec![([1, 0, 0], a), ([0, 1, 0], b), ([0, 0, 1], c)])
    }

    /// Coefficients against [`monomials`]`(degree)`.
    pub fn from_coeff_vector<F: Field<Elem = E>>(field: &F, degree: u32, coeffs: &[E]) -> Self {
        let ms = monomials(degree);
        assert_eq!(ms.len(), coeffs.len());
        Self::from_terms(field, degree, ms.into_iter().zip(coeffs.iter().cloned()).collect())
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &E)> {
        self.terms.iter()
    }

    pub fn coeff<F: Field<Elem = E>>(&self, field: &F, m: &Monomial) -> E {
        self.terms.get(m).cloned().unwrap_or_else(|| field.zero())
    }

    pub fn eval<F: Field<Elem = E>>(&self, field: &F, p: &[E; 3]) -> E {
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..3 {
                if m[i] > 0 {
                    t = field.mul(&t, &field.pow_u(&p[i], m[i] as u64));
                }
            }
            acc = field.add(&acc, &t);
        }
        acc
    }

    pub fn add<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree, "degree mismatch");
        let terms = self.terms.iter().chain(&other.terms).map(|(m, c)| (*m, c.clone())).collect();
        Self::from_terms(field, self.degree, terms)
    }

    pub fn sub<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        self.add(field, &other.scale(field, &field.from_i64(-1)))
    }

    pub fn scale<F: Field<Elem = E>>(&self, field: &F, c: &E) -> Self {
        let terms = self.terms.iter().map(|(m, x)| (*m, field.mul(x, c))).collect();
        Self::from_terms(field, self.degree, terms)
    }

    pub fn mul<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                terms.push(([m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2]], field.mul(c1, c2)));
            }
        }
        Self::from_terms(field, self.degree + other.degree, terms)
    }

    pub fn pow<F: Field<Elem = E>>(&self, field: &F, e: u32) -> Self {
        let mut acc = Self::one(field);
        for _ in 0..e {
            acc = acc.mul(field, self);
        }
        acc
    }

    pub fn product<'a, F: Field<Elem = E>>(field: &F, forms: impl IntoIterator<Item = &'a Self>) -> Self
    where
        E: 'a,
    {
        forms.into_iter().fold(Self::one(field), |acc, f| acc.mul(field, f))
    }

    /// Partial derivative with respect to coordinate `i`.
    pub fn derivative<F: Field<Elem = E>>(&self, field: &F, i: usize) -> Self {
        if self.degree == 0 {
            return Self::zero(0);
        }
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m[i] > 0)
            .map(|(m, c)| {
                let mut m2 = *m;
                m2[i] -= 1;
                (m2, field.mul(c, &field.from_i64(m[i] as i64)))
            })
            .collect();
        Self::from_terms(field, self.degree - 1, terms)
    }

    /// Applies `phi` to every coefficient.
    pub fn map_coeffs<F: Field<Elem = E>>(&self, field: &F, phi: impl Fn(&E) -> Result<E, FieldError>) -> Result<Self, FieldError> {
        let terms = self.terms.iter().map(|(m, c)| Ok((*m, phi(c)?))).collect::<Result<Vec<_>, FieldError>>()?;
        Ok(Self::from_terms(field, self.degree, terms))
    }

    /// `G(M v)` where `v = (X, Y, Z)` and `M` is a 3x3 matrix given by rows.
    pub fn linear_substitute<F: Field<Elem = E>>(&self, field: &F, m: &[[E; 3]; 3]) -> Self {
        let images: Vec<Self> = m.iter().map(|r| Self::linear(field, r[0].clone(), r[1].clone(), r[2].clone())).collect();
        let mut acc = Self::zero(self.degree);
        for (mono, c) in &self.terms {
            let mut t = Self::constant(field, c.clone());
            for i in 0..3 {
                t = t.mul(field, &images[i].pow(field, mono[i]));
            }
            acc = acc.add(field, &t);
        }
        acc
    }

    /// Coefficients against [`monomials`]`(degree)`.
    pub fn coeff_vector<F: Field<Elem = E>>(&self, field: &F) -> Vec<E> {
        monomials(self.degree).iter().map(|m| self.coeff(field, m)).collect()
    }

    /// Makes the first nonzero coefficient (in [`monomials`] order) equal
    /// to 1.
    pub fn monic<F: Field<Elem = E>>(&self, field: &F) -> Self {
        match monomials(self.degree).iter().find_map(|m| self.terms.get(m)) {
            Some(c) => self.scale(field, &field.inv(c).expect("nonzero")),
            None => self.clone(),
        }
    }

    pub fn to_json<F: Field<Elem = E>>(&self, field: &F) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(m, c)| serde_json::json!({ "monomial": m, "coeff": field.to_json(c) }))
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    #[test]
    fn monomial_count() {
        assert_eq!(monomials(0), vec![[0, 0, 0]]);
        assert_eq!(monomials(1), vec![[1, 0, 0], [0, 1, 0], [0, 0, 1]]);
        assert_eq!(monomials(4).len(), 15);
    }

    #[test]
    fn substitute_and_derivative() {
        let f = PrimeField::new(7).unwrap();
        let fermat = Form::from_terms(&f, 4, vec![([4, 0, 0], 1), ([0, 4, 0], 1), ([0, 0, 4], 6)]);
        let swap = [[0, 1, 0], [1, 0, 0], [0, 0, 1]];
        assert_eq!(fermat.linear_substitute(&f, &swap), fermat);
        let dx = fermat.derivative(&f, 0);
        assert_eq!(dx, Form::from_terms(&f, 3, vec![([3, 0, 0], 4)]));
        let l = Form::linear(&f, 1, 0, 6);
        assert_eq!(l.pow(&f, 2).eval(&f, &[3, 5, 1]), 4);
    }
}
