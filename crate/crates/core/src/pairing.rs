//! The Weil pairing on `Jac[4]` by the evaluation-product formula.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::curve::{CurveError, Form, PlaneCurve};
use crate::explicit;
use crate::field::standard::ZETA4;
use crate::field::Field;
use crate::rr::{verify_form_divisor, Divisor};
use crate::z4::Z4Matrix;

pub const N: i64 = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PairingError {
    #[error("pairing value {0} is not a fourth root of unity")]
    NotAFourthRoot(String),
    #[error("auxiliary function {0} does not have the claimed divisor")]
    WrongAuxiliary(String),
    #[error(transparent)]
    Curve(#[from] CurveError),
}

/// A degree-0 divisor `D` with a function `phi = prod g^k` such that
/// `div(phi) = 4 D`.
#[derive(Clone, Debug)]
pub struct TorsionWitness<E> {
    pub divisor: Divisor<E>,
    pub factors: Vec<(Form<E>, i64)>,
}

impl<E: Clone + Ord> TorsionWitness<E> {
    pub fn new(divisor: Divisor<E>, factors: Vec<(Form<E>, i64)>) -> Self {
        Self { divisor, factors }
    }

    pub fn quotient(num: Form<E>, den: Form<E>, den_power: i64, divisor: Divisor<E>) -> Self {
        Self { divisor, factors: vec![(num, 1), (den, -den_power)] }
    }
}

/// `<[D], [E]>` as an element of the field.
pub fn pairing_value<F: Field>(curve: &PlaneCurve<F>, d: &TorsionWitness<F::Elem>, e: &TorsionWitness<F::Elem>) -> Result<F::Elem, PairingError> {
    let f = curve.field();
    let support: BTreeSet<_> = d.divisor.support().chain(e.divisor.support()).cloned().collect();
    let mut acc = f.one();
    for p in support {
        let (a, b) = (d.divisor.get(&p), e.divisor.get(&p));
        // the sign (-1)^(n a b) is trivial for even n
        debug_assert_eq!((N * a * b) % 2, 0);
        let mut factors: Vec<(&Form<F::Elem>, i64)> = Vec::new();
        factors.extend(e.factors.iter().map(|(g, k)| (g, k * a)));
        factors.extend(d.factors.iter().map(|(g, k)| (g, -k * b)));
        acc = f.mul(&acc, &curve.eval_ord0_pow(&p, &factors)?);
    }
    Ok(acc)
}

/// `k` with `x = zeta4^k`.
pub fn mu4_log<F: Field>(f: &F, x: &F::Elem) -> Result<u8, PairingError> {
    let z4 = f.require(ZETA4).map_err(CurveError::from)?;
    (0..4u8).find(|&k| f.pow_u(&z4, k as u64) == *x).ok_or_else(|| PairingError::NotAFourthRoot(format!("{x:?}")))
}

pub fn pairing<F: Field>(curve: &PlaneCurve<F>, d: &TorsionWitness<F::Elem>, e: &TorsionWitness<F::Elem>) -> Result<u8, PairingError> {
    mu4_log(curve.field(), &pairing_value(curve, d, e)?)
}

/// Witnesses for `e_1, ..., e_5, e'_6`: the quotients `f_i / g_1` and
/// `f'_6 / g_1^3`, with their divisors checked.
pub fn basis_witnesses<F: Field>(curve: &PlaneCurve<F>) -> Result<Vec<TorsionWitness<F::Elem>>, PairingError> {
    let f = curve.field();
    let sp = curve.standard_points()?;
    let (lines, g1) = explicit::basis_lines(f).map_err(CurveError::from)?;
    let f6 = explicit::f6_prime(f).map_err(CurveError::from)?;
    let b0 = &sp.b[0];
    let targets = [&sp.a[1], &sp.a[2], &sp.b[1], &sp.b[2], &sp.c[1]];
    let check = |form: &Form<F::Elem>, d: Divisor<F::Elem>, name: &str| -> Result<(), PairingError> {
        if verify_form_divisor(curve, form, &d)? {
            Ok(())
        } else {
            Err(PairingError::WrongAuxiliary(name.to_string()))
        }
    };
    check(&g1, Divisor::from_pairs([(b0.clone(), 4)]), "g1")?;
    let mut out = Vec::new();
    for (i, (line, z)) in lines.into_iter().zip(targets).enumerate() {
        check(&line, Divisor::from_pairs([(z.clone(), 4)]), &format!("f{}", i + 1))?;
        let d = Divisor::from_pairs([(z.clone(), 1), (b0.clone(), -1)]);
        out.push(TorsionWitness::quotient(line, g1.clone(), 1, d));
    }
    let ps = sp.p()?;
    check(&f6, Divisor::from_pairs(ps.iter().map(|p| (p.clone(), 4))), "f6'")?;
    let mut d = Divisor::from_pairs(ps.iter().map(|p| (p.clone(), 1)));
    d.add_at(b0, -3);
    out.push(TorsionWitness::quotient(f6, g1, 3, d));
    Ok(out)
}

/// Entry `(i, j)` is `<w_i, w_j>`.
pub fn pairing_matrix<F: Field>(curve: &PlaneCurve<F>, basis: &[TorsionWitness<F::Elem>]) -> Result<Z4Matrix, PairingError> {
    let n = basis.len();
    let mut m = Z4Matrix::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, pairing(curve, &basis[i], &basis[j])? as i64);
        }
    }
    Ok(m)
}
