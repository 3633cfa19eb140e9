//! The concrete fields used for the Fermat quartic, with their distinguished
//! elements registered under fixed names.

use num_rational::BigRational;

use super::{Extension, Field, FieldAutomorphism, FieldError, NfElem, NumberField, PrimeField, Rationals, Reduction};
use crate::linalg;

pub const ZETA8: &str = "zeta8";
pub const ZETA4: &str = "zeta4";
pub const SQRT2: &str = "sqrt2";
pub const FOURTH_ROOT_2: &str = "fourth_root_2";
pub const DELTA: &str = "delta";
pub const ZETA3: &str = "zeta3";
pub const SQRT_M7: &str = "sqrt_m7";
pub const ALPHA: &str = "alpha";

/// Minimal polynomial of `delta`, low to high.
pub const DELTA_MINPOLY: [i64; 9] = [1, 0, -4, 0, 8, 0, -4, 0, 1];

/// The shadow prime.
pub const SHADOW_PRIME: u64 = 73;
pub const SHADOW_ZETA8: u64 = 10;
pub const SHADOW_FOURTH_ROOT_2: u64 = 18;
pub const SHADOW_ZETA3: u64 = 8;

/// `Q(delta) = Q(2^(1/4), zeta8)` as one degree-8 step.
pub fn q_delta() -> NumberField {
    let k = NumberField::new(&DELTA_MINPOLY, DELTA).expect("monic");
    let zeta8 = k.from_ints(&[-1, 0, 11, 0, -7, 0, 2], 3);
    let root = k.from_ints(&[0, -8, 0, 10, 0, -5, 0, 1], 3);
    let zeta4 = k.square(&zeta8);
    let sqrt2 = k.add(&zeta8, &k.pow_u(&zeta8, 7));
    k.with_named(ZETA8, zeta8).with_named(ZETA4, zeta4).with_named(SQRT2, sqrt2).with_named(FOURTH_ROOT_2, root)
}

/// `Q(zeta8) = Q[x]/(x^4 + 1)`.
pub fn q_zeta8() -> NumberField {
    let k = NumberField::new(&[1, 0, 0, 0, 1], ZETA8).expect("monic");
    let z = k.generator();
    let zeta4 = k.square(&z);
    let sqrt2 = k.add(&z, &k.pow_u(&z, 7));
    k.with_named(ZETA4, zeta4).with_named(SQRT2, sqrt2)
}

/// `F_73` with the compatible roots of unity and of 2 registered.
pub fn shadow_f73() -> PrimeField {
    let f = base_f73();
    let red = shadow_reduction_into(&f);
    f.with_named(DELTA, red.root())
}

fn base_f73() -> PrimeField {
    let f = PrimeField::new(SHADOW_PRIME).expect("prime");
    let z = SHADOW_ZETA8;
    let zeta4 = f.mul(&z, &z);
    let sqrt2 = f.add(&z, &f.pow_u(&z, 7));
    f.with_named(ZETA8, z)
        .with_named(ZETA4, zeta4)
        .with_named(SQRT2, sqrt2)
        .with_named(FOURTH_ROOT_2, SHADOW_FOURTH_ROOT_2)
        .with_named(ZETA3, SHADOW_ZETA3)
}

fn shadow_reduction_into(target: &PrimeField) -> Reduction {
    Reduction::matching(&q_delta(), target, &[(ZETA8, SHADOW_ZETA8), (FOURTH_ROOT_2, SHADOW_FOURTH_ROOT_2)])
        .expect("73 splits completely in Q(delta)")
}

/// Reduction `Q(delta) -> F_73` compatible with the registered names.
pub fn shadow_reduction() -> Reduction {
    shadow_reduction_into(&shadow_f73())
}

pub fn f3() -> PrimeField {
    PrimeField::new(3).expect("prime")
}

pub fn f9() -> Extension<PrimeField> {
    Extension::new(f3(), vec![1, 0, 1], "i").expect("monic")
}

pub fn f27() -> Extension<PrimeField> {
    Extension::new(f3(), vec![1, 2, 0, 1], "w").expect("monic")
}

/// `Q(zeta8)(2^(1/4))` as `y^2 = sqrt2` over `Q(zeta8)`.
pub fn q_fourth_root_2_zeta8() -> Extension<NumberField> {
    let k = q_zeta8();
    let sqrt2 = k.named(SQRT2).unwrap();
    Extension::new(k.clone(), vec![k.neg(&sqrt2), k.zero(), k.one()], FOURTH_ROOT_2).expect("monic")
}

/// `Q(zeta8)(zeta3)` as `y^2 + y + 1` over `Q(zeta8)`.
pub fn q_zeta3_zeta8() -> Extension<NumberField> {
    let k = q_zeta8();
    Extension::new(k.clone(), vec![k.one(), k.one(), k.one()], ZETA3).expect("monic")
}

/// `Q(zeta8)(alpha)` with `alpha = (1 + sqrt(-7))/2`, i.e. `y^2 - y + 2`.
pub fn q_sqrtm7_zeta8() -> Extension<NumberField> {
    let k = q_zeta8();
    let e = Extension::new(k.clone(), vec![k.from_i64(2), k.from_i64(-1), k.one()], ALPHA).expect("monic");
    let sqrt_m7 = e.sub(&e.add(&e.generator(), &e.generator()), &e.one());
    e.with_named(SQRT_M7, sqrt_m7)
}

/// The nontrivial automorphism of a quadratic step `y^2 + b y + c`:
/// `y -> -b - y`.
pub fn quadratic_conjugation(field: &Extension<NumberField>, label: &str) -> Result<FieldAutomorphism<Extension<NumberField>>, FieldError> {
    assert_eq!(field.ext_degree(), 2, "quadratic step");
    let k = field.base();
    let b = field.minpoly()[1].clone();
    let image = vec![k.neg(&b), k.from_i64(-1)];
    FieldAutomorphism::new(field, image, label, &[])
}

/// Expresses `x` in the basis `a^i z^j` (`i < 2`, `j < 4`) of `Q(delta)`,
/// where `a = 2^(1/4)` and `z = zeta8`.
fn coords_in_root_basis(k: &NumberField, x: &NfElem) -> Vec<BigRational> {
    let a = k.named(FOURTH_ROOT_2).unwrap();
    let z = k.named(ZETA8).unwrap();
    let mut cols = Vec::new();
    for i in 0..2u64 {
        for j in 0..4u64 {
            cols.push(k.mul(&k.pow_u(&a, i), &k.pow_u(&z, j)).coeffs());
        }
    }
    let q = Rationals;
    let rows: Vec<Vec<BigRational>> = (0..8).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
    linalg::solve(&q, &rows, &x.coeffs()).expect("a^i z^j span Q(delta)")
}

/// The automorphism of `Q(delta)` sending `2^(1/4) -> image_a` and
/// `zeta8 -> image_z`, checked on construction.
pub fn delta_automorphism(k: &NumberField, label: &str, image_a: NfElem, image_z: NfElem) -> Result<FieldAutomorphism<NumberField>, FieldError> {
    let q = coords_in_root_basis(k, &k.generator());
    let mut image = k.zero();
    let mut idx = 0;
    for i in 0..2u64 {
        for j in 0..4u64 {
            let term = k.mul(&k.pow_u(&image_a, i), &k.pow_u(&image_z, j));
            let c = k.from_rationals(&[q[idx].clone()]);
            image = k.add(&image, &k.mul(&c, &term));
            idx += 1;
        }
    }
    FieldAutomorphism::new(k, image, label, &[(FOURTH_ROOT_2, image_a), (ZETA8, image_z)])
}

/// `sigma: zeta8 -> -zeta8, 2^(1/4) -> 2^(1/4) zeta4`.
pub fn sigma(k: &NumberField) -> FieldAutomorphism<NumberField> {
    let a = k.named(FOURTH_ROOT_2).unwrap();
    let z = k.named(ZETA8).unwrap();
    let zeta4 = k.named(ZETA4).unwrap();
    delta_automorphism(k, "sigma", k.mul(&a, &zeta4), k.neg(&z)).expect("sigma is an automorphism")
}

/// `tau: zeta8 -> zeta8^7, 2^(1/4) fixed`.
pub fn tau(k: &NumberField) -> FieldAutomorphism<NumberField> {
    let a = k.named(FOURTH_ROOT_2).unwrap();
    let z = k.named(ZETA8).unwrap();
    delta_automorphism(k, "tau", a, k.pow_u(&z, 7)).expect("tau is an automorphism")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_field_relations() {
        let k = q_delta();
        let z = k.named(ZETA8).unwrap();
        let a = k.named(FOURTH_ROOT_2).unwrap();
        assert_eq!(k.pow_u(&z, 8), k.one());
        assert_eq!(k.add(&k.pow_u(&z, 4), &k.one()), k.zero());
        assert_eq!(k.pow_u(&a, 4), k.from_i64(2));
        assert_eq!(k.named(SQRT2).unwrap(), k.square(&a));
        // 2 delta^2 = (2 - sqrt2)(1 + zeta4)
        let d = k.generator();
        let rhs = k.mul(&k.sub(&k.from_i64(2), &k.named(SQRT2).unwrap()), &k.add(&k.one(), &k.named(ZETA4).unwrap()));
        assert_eq!(k.mul(&k.from_i64(2), &k.square(&d)), rhs);
        assert!(k.named(ZETA3).is_none());
    }

    #[test]
    fn shadow_field_values() {
        let f = shadow_f73();
        assert_eq!(f.pow_u(&10, 4), 72);
        assert_eq!(f.add(&10, &f.pow_u(&10, 7)), f.mul(&18, &18));
        assert_eq!(f.named(ZETA4), Some(27));
        assert_eq!(f.pow_u(&8, 3), 1);
        let red = shadow_reduction();
        let k = q_delta();
        assert_eq!(red.apply(&k.named(ZETA8).unwrap()).unwrap(), 10);
        assert_eq!(red.apply(&k.named(FOURTH_ROOT_2).unwrap()).unwrap(), 18);
        assert_eq!(f.named(DELTA), Some(red.root()));
        assert_eq!(Reduction::roots(&k, &f).len(), 8);
    }

    #[test]
    fn census_fields() {
        let e = q_sqrtm7_zeta8();
        let s = e.named(SQRT_M7).unwrap();
        assert_eq!(e.square(&s), e.from_i64(-7));
        let r = q_fourth_root_2_zeta8();
        let y = r.generator();
        assert_eq!(r.pow_u(&y, 4), r.from_i64(2));
        let c = q_zeta3_zeta8();
        assert_eq!(c.pow_u(&c.generator(), 3), c.one());
        let conj = quadratic_conjugation(&c, "bar").unwrap();
        assert_eq!(conj.apply(&c.generator()).unwrap(), c.square(&c.generator()));
    }

    #[test]
    fn small_fields() {
        assert_eq!(f9().order(), Some(9));
        assert_eq!(f27().order(), Some(27));
        let f = f27();
        for e in f.elements().unwrap().iter().skip(1) {
            assert_eq!(f.mul(e, &f.inv(e).unwrap()), f.one());
        }
    }

    #[test]
    fn sigma_tau_generate_dihedral_group() {
        let k = q_delta();
        let s = sigma(&k);
        let t = tau(&k);
        let s2 = s.compose(&s);
        let s3 = s2.compose(&s);
        assert!(s3.compose(&s).is_identity());
        assert!(!s2.is_identity());
        assert!(t.compose(&t).is_identity());
        assert_eq!(t.compose(&s).compose(&t), s3);
        let mut group = vec![FieldAutomorphism::identity(&k)];
        let mut i = 0;
        while i < group.len() {
            for g in [&s, &t] {
                let h = group[i].compose(g);
                if !group.contains(&h) {
                    group.push(h);
                }
            }
            i += 1;
        }
        assert_eq!(group.len(), 8);
    }
}
