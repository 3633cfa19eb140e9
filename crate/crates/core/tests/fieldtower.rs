use proptest::prelude::*;
use quartic_core::field::standard::{self, FOURTH_ROOT_2, SQRT2, ZETA8};
use quartic_core::field::{Field, NfElem, NumberField};

fn k() -> NumberField {
    standard::q_delta()
}

fn elem() -> impl Strategy<Value = NfElem> {
    (prop::collection::vec(-20i64..=20, 8), 1i64..=12).prop_map(|(c, d)| k().from_ints(&c, d))
}

/// Plain integer arithmetic mod 73, independent of `PrimeField`.
fn mod73(x: i64) -> u64 {
    x.rem_euclid(73) as u64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn automorphisms_are_ring_homomorphisms(x in elem(), y in elem()) {
        let k = k();
        let s = standard::sigma(&k);
        let t = standard::tau(&k);
        for g in [&s, &t, &s.compose(&t), &t.compose(&s).compose(&s)] {
            prop_assert_eq!(g.apply(&k.mul(&x, &y)).unwrap(), k.mul(&g.apply(&x).unwrap(), &g.apply(&y).unwrap()));
            prop_assert_eq!(g.apply(&k.add(&x, &y)).unwrap(), k.add(&g.apply(&x).unwrap(), &g.apply(&y).unwrap()));
        }
    }

    #[test]
    fn reduction_to_f73_is_a_ring_homomorphism(x in elem(), y in elem()) {
        let k = k();
        let red = standard::shadow_reduction();
        let f = red.target().clone();
        let (rx, ry) = (red.apply(&x).unwrap(), red.apply(&y).unwrap());
        prop_assert_eq!(red.apply(&k.mul(&x, &y)).unwrap(), f.mul(&rx, &ry));
        prop_assert_eq!(red.apply(&k.sub(&x, &y)).unwrap(), f.sub(&rx, &ry));
    }

    #[test]
    fn inverse_and_division(x in elem(), y in elem()) {
        let k = k();
        prop_assume!(!k.is_zero(&y));
        let q = k.div(&x, &y).unwrap();
        prop_assert_eq!(k.mul(&q, &y), x);
    }

    #[test]
    fn canonical_form_survives_history_and_serialization(x in elem(), y in elem()) {
        let k = k();
        let roundabout = k.sub(&k.add(&k.mul(&x, &y), &y), &y);
        prop_assert_eq!(&roundabout, &k.mul(&x, &y));
        prop_assert_eq!(k.from_json(&k.to_json(&roundabout)).unwrap(), roundabout);
    }

    #[test]
    fn f73_matches_integer_arithmetic(a in -500i64..500, b in -500i64..500) {
        let f = standard::shadow_f73();
        prop_assert_eq!(f.mul(&f.from_i64(a), &f.from_i64(b)), mod73(a * b));
        prop_assert_eq!(f.add(&f.from_i64(a), &f.from_i64(b)), mod73(a + b));
        if mod73(b) != 0 {
            prop_assert_eq!(mod73(f.div(&f.from_i64(a), &f.from_i64(b)).unwrap() as i64 * b), mod73(a));
        }
    }
}

#[test]
fn named_elements_of_the_tower() {
    let k = k();
    let z = k.named(ZETA8).unwrap();
    let a = k.named(FOURTH_ROOT_2).unwrap();
    assert_eq!(k.add(&k.pow_u(&z, 4), &k.one()), k.zero());
    assert_eq!(k.pow_u(&a, 4), k.from_i64(2));
    assert_eq!(k.add(&z, &k.pow_u(&z, 7)), k.square(&a));
    assert_eq!(k.named(SQRT2).unwrap(), k.square(&a));
}

#[test]
fn shadow_identity_by_hand() {
    // 10^7 mod 73 and 18^2 mod 73 by repeated multiplication
    let mut p = 1u64;
    for _ in 0..7 {
        p = p * 10 % 73;
    }
    assert_eq!((10 + p) % 73, 18 * 18 % 73);
    let f = standard::shadow_f73();
    assert_eq!(f.add(&10, &f.pow_u(&10, 7)), f.square(&18));
}

#[test]
fn galois_group_is_dihedral_of_order_8() {
    let k = k();
    let s = standard::sigma(&k);
    let t = standard::tau(&k);
    let mut group = vec![quartic_core::field::FieldAutomorphism::identity(&k)];
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
    let s3 = s.compose(&s).compose(&s);
    assert_eq!(t.compose(&s).compose(&t), s3);
}
