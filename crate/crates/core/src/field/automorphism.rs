use std::fmt;

use super::{Extension, Field, FieldError, NfElem, NumberField};

/// Fields presented as one simple extension step, so that an automorphism
/// fixing the base is determined by the image of the generator.
pub trait SimpleExtension: Field {
    fn gen(&self) -> Self::Elem;
    /// Value of the defining polynomial at `x`.
    fn minpoly_at(&self, x: &Self::Elem) -> Self::Elem;
    /// Replaces the generator by `image` in the power-basis expansion of `a`.
    fn substitute(&self, a: &Self::Elem, image: &Self::Elem) -> Self::Elem;
    fn owns(&self, a: &Self::Elem) -> bool;
}

impl SimpleExtension for NumberField {
    fn gen(&self) -> NfElem {
        self.generator()
    }

    fn minpoly_at(&self, x: &NfElem) -> NfElem {
        let mut acc = self.zero();
        for c in self.minpoly().iter().rev() {
            acc = self.add(&self.mul(&acc, x), &self.from_int(c));
        }
        acc
    }

    fn substitute(&self, a: &NfElem, image: &NfElem) -> NfElem {
        self.eval_at(a, image)
    }

    fn owns(&self, a: &NfElem) -> bool {
        a.numerators().len() == self.ext_degree()
    }
}

impl<K: Field> SimpleExtension for Extension<K> {
    fn gen(&self) -> Self::Elem {
        self.generator()
    }

    fn minpoly_at(&self, x: &Self::Elem) -> Self::Elem {
        let mut acc = self.zero();
        for c in self.minpoly().iter().rev() {
            acc = self.add(&self.mul(&acc, x), &self.embed(c));
        }
        acc
    }

    fn substitute(&self, a: &Self::Elem, image: &Self::Elem) -> Self::Elem {
        self.eval_at(a, image)
    }

    fn owns(&self, a: &Self::Elem) -> bool {
        a.len() == self.ext_degree()
    }
}

/// A field automorphism fixing the base of the top extension step, given by
/// the image of the generator.
#[derive(Clone)]
pub struct FieldAutomorphism<F: SimpleExtension> {
    field: F,
    image: F::Elem,
    label: String,
}

impl<F: SimpleExtension> fmt::Debug for FieldAutomorphism<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: gen -> {:?}", self.label, self.image)
    }
}

impl<F: SimpleExtension> FieldAutomorphism<F> {
    /// Checks that `image` is a root of the defining polynomial and that every
    /// `(name, expected)` pair is respected.
    pub fn new(field: &F, image: F::Elem, label: &str, expected: &[(&str, F::Elem)]) -> Result<Self, FieldError> {
        if !field.owns(&image) {
            return Err(FieldError::OwnerMismatch);
        }
        if !field.is_zero(&field.minpoly_at(&image)) {
            return Err(FieldError::NotARoot);
        }
        let aut = Self { field: field.clone(), image, label: label.to_string() };
        for (name, want) in expected {
            let x = field.named(name).ok_or(FieldError::ActionMismatch { name: name.to_string() })?;
            if aut.apply(&x)? != *want {
                return Err(FieldError::ActionMismatch { name: name.to_string() });
            }
        }
        Ok(aut)
    }

    pub fn identity(field: &F) -> Self {
        Self { field: field.clone(), image: field.gen(), label: "id".to_string() }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn generator_image(&self) -> &F::Elem {
        &self.image
    }

    pub fn apply(&self, a: &F::Elem) -> Result<F::Elem, FieldError> {
        if !self.field.owns(a) {
            return Err(FieldError::OwnerMismatch);
        }
        Ok(self.field.substitute(a, &self.image))
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        let image = self.field.substitute(&other.image, &self.image);
        Self { field: self.field.clone(), image, label: format!("{}{}", self.label, other.label) }
    }

    pub fn is_identity(&self) -> bool {
        self.image == self.field.gen()
    }
}

impl<F: SimpleExtension> PartialEq for FieldAutomorphism<F> {
    fn eq(&self, other: &Self) -> bool {
        self.image == other.image
    }
}

impl<F: SimpleExtension> Eq for FieldAutomorphism<F> {}
