//! Explicit functions on the quartic whose divisors are known in closed
//! form. Constants are integer polynomials in `delta`.

use crate::curve::{Form, Monomial};
use crate::field::standard::{DELTA, ZETA4, ZETA8};
use crate::field::{Field, MissingElement};

// coefficient vectors, constant term first
pub const C1: [i64; 7] = [7, 0, 1, 0, -2, 0, 1];
pub const C2: [i64; 7] = [-13, 0, 20, 0, -10, 0, 2];
pub const C3: [i64; 8] = [-24, -86, 63, 166, -36, -86, 9, 22];
pub const C4: [i64; 8] = [-14, 46, -20, 22, 7, -26, -2, 10];
pub const C5: [i64; 7] = [-44, 0, 154, 0, -77, 0, 22];

pub const C1P: [i64; 8] = [93, 452, 63, -496, -36, 224, 9, -52];
pub const C2P: [i64; 8] = [-58, 88, 449, 736, -280, -476, 80, 148];
pub const C3P: [i64; 8] = [-160, -312, 515, 1476, -253, -780, 71, 216];
pub const C4P: [i64; 7] = [-365, 0, 730, 0, -365, 0, 73];
pub const C5P: [i64; 8] = [203, 568, 728, -824, -553, 352, 158, -80];

/// `sum c_i delta^i` in any field with `delta` registered.
pub fn delta_poly<F: Field>(f: &F, coeffs: &[i64]) -> Result<F::Elem, MissingElement> {
    let d = f.require(DELTA)?;
    let mut acc = f.zero();
    for c in coeffs.iter().rev() {
        acc = f.add(&f.mul(&acc, &d), &f.from_i64(*c));
    }
    Ok(acc)
}

const X3: Monomial = [3, 0, 0];
const Y3: Monomial = [0, 3, 0];
const Z3: Monomial = [0, 0, 3];
const X2Y: Monomial = [2, 1, 0];
const X2Z: Monomial = [2, 0, 1];
const XY2: Monomial = [1, 2, 0];
const Y2Z: Monomial = [0, 2, 1];
const XZ2: Monomial = [1, 0, 2];
const YZ2: Monomial = [0, 1, 2];
const XYZ: Monomial = [1, 1, 1];

fn cubic<F: Field>(f: &F, parts: &[(F::Elem, &[(Monomial, i64)])]) -> Form<F::Elem> {
    let mut terms = Vec::new();
    for (c, ms) in parts {
        for (m, s) in ms.iter() {
            terms.push((*m, f.mul(c, &f.from_i64(*s))));
        }
    }
    Form::from_terms(f, 3, terms)
}

/// Denominator of the key function.
pub fn key_g1<F: Field>(f: &F) -> Result<Form<F::Elem>, MissingElement> {
    let c1 = delta_poly(f, &C1)?;
    let c2 = delta_poly(f, &C2)?;
    Ok(cubic(
        f,
        &[
            (f.from_i64(3), &[(X3, 1), (Y3, 1), (Z3, 1)]),
            (c1, &[(X2Y, 1), (X2Z, 1), (XY2, 1), (XYZ, 1), (Y2Z, 1), (Z3, -1)]),
            (f.neg(&c2), &[(XYZ, 1), (XZ2, 1), (YZ2, 1), (Z3, 1)]),
        ],
    ))
}

/// Numerator of the key function.
pub fn key_g2<F: Field>(f: &F) -> Result<Form<F::Elem>, MissingElement> {
    let c3 = delta_poly(f, &C3)?;
    let c4 = delta_poly(f, &C4)?;
    let c5 = delta_poly(f, &C5)?;
    Ok(cubic(
        f,
        &[
            (f.from_i64(33), &[(X3, 1), (XY2, 1), (XYZ, 1), (XZ2, -1), (Y2Z, -1), (YZ2, -1)]),
            (c3, &[(X2Y, -1), (XYZ, 1)]),
            (c4, &[(X2Z, 1), (XYZ, 1), (XZ2, -1), (YZ2, -1)]),
            (c5, &[(XZ2, 1), (Z3, -1)]),
        ],
    ))
}

/// The cubic meeting the curve in `4 (P1 + P2 + P3)`.
pub fn f6_prime<F: Field>(f: &F) -> Result<Form<F::Elem>, MissingElement> {
    let c = [&C1P[..], &C2P, &C3P, &C4P, &C5P].map(|v| delta_poly(f, v));
    let [c1, c2, c3, c4, c5] = c;
    Ok(cubic(
        f,
        &[
            (f.from_i64(219), &[(X3, 1), (Y3, 1)]),
            (c1?, &[(X2Y, 1), (XY2, 1)]),
            (c2?, &[(X2Z, 1), (Y2Z, 1)]),
            (c3?, &[(XZ2, 1), (YZ2, 1)]),
            (c4?, &[(Z3, 1)]),
            (c5?, &[(XYZ, 1)]),
        ],
    ))
}

/// The lines `f_1, ..., f_5` and `g_1 = X - Z`, whose quotients have
/// divisors `4 (A_1 - B_0), 4 (A_2 - B_0), 4 (B_1 - B_0), 4 (B_2 - B_0),
/// 4 (C_1 - B_0)`.
pub fn basis_lines<F: Field>(f: &F) -> Result<([Form<F::Elem>; 5], Form<F::Elem>), MissingElement> {
    let z4 = f.require(ZETA4)?;
    let z8 = f.require(ZETA8)?;
    let (one, zero) = (f.one(), f.zero());
    let m1 = f.from_i64(-1);
    let lines = [
        Form::linear(f, zero.clone(), one.clone(), f.neg(&z4)),
        Form::linear(f, zero.clone(), one.clone(), one.clone()),
        Form::linear(f, one.clone(), zero.clone(), f.neg(&z4)),
        Form::linear(f, one.clone(), zero.clone(), one.clone()),
        Form::linear(f, one.clone(), f.neg(&f.pow_u(&z8, 3)), zero.clone()),
    ];
    Ok((lines, Form::linear(f, one, zero, m1)))
}
