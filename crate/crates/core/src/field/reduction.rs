use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{Field, FieldError, NfElem, NumberField, PrimeField};

/// Reduction of a number field modulo a degree-one prime, given by the
/// residue `root` that the generator is sent to.
#[derive(Clone, Debug)]
pub struct Reduction {
    source: NumberField,
    target: PrimeField,
    root: u64,
}

impl Reduction {
    pub fn new(source: &NumberField, target: &PrimeField, root: u64) -> Result<Self, FieldError> {
        let red = Self { source: source.clone(), target: target.clone(), root: root % target.modulus() };
        let m: Vec<u64> = source.minpoly().iter().map(|c| target.from_int(c)).collect();
        let val = m.iter().rev().fold(0, |acc, c| target.add(&target.mul(&acc, &red.root), c));
        if val != 0 {
            return Err(FieldError::NotARoot);
        }
        Ok(red)
    }

    /// Residues of the generator's minimal polynomial, in increasing order.
    pub fn roots(source: &NumberField, target: &PrimeField) -> Vec<u64> {
        (0..target.modulus()).filter(|&r| Self::new(source, target, r).is_ok()).collect()
    }

    /// The unique root under which each `(name, residue)` pair holds.
    pub fn matching(source: &NumberField, target: &PrimeField, images: &[(&str, u64)]) -> Result<Self, FieldError> {
        let mut found = Vec::new();
        for r in Self::roots(source, target) {
            let red = Self::new(source, target, r)?;
            let ok = images.iter().all(|(name, want)| {
                source.named(name).and_then(|x| red.apply(&x).ok()) == Some(*want % target.modulus())
            });
            if ok {
                found.push(red);
            }
        }
        match found.len() {
            1 => Ok(found.pop().unwrap()),
            _ => Err(FieldError::ActionMismatch { name: format!("{images:?}") }),
        }
    }

    pub fn source(&self) -> &NumberField {
        &self.source
    }

    pub fn target(&self) -> &PrimeField {
        &self.target
    }

    pub fn root(&self) -> u64 {
        self.root
    }

    pub fn apply(&self, a: &NfElem) -> Result<u64, FieldError> {
        let t = &self.target;
        let p = BigInt::from(t.modulus());
        let d = a.denominator().mod_floor(&p).to_u64().unwrap();
        if d == 0 {
            return Err(FieldError::BadReduction(t.modulus()));
        }
        let mut acc = 0;
        for c in a.numerators().iter().rev() {
            acc = t.add(&t.mul(&acc, &self.root), &t.from_int(c));
        }
        t.div(&acc, &d)
    }
}
