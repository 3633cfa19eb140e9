use std::sync::OnceLock;

use proptest::prelude::*;
use quartic_core::field::standard;
use quartic_core::galois::{self, act_on_divisor};
use quartic_core::pairing::{self, TorsionWitness};
use quartic_core::torsion::RANK;
use quartic_core::z4;
use quartic_core::{Context, Field, FieldTag, Golden, Mode, NfElem, PlaneCurve, TorsionModel, TorsionVector, Z4Matrix};

fn ctx(mode: Mode) -> &'static Context {
    static C: OnceLock<[Context; 2]> = OnceLock::new();
    let all = C.get_or_init(|| [Context::new(Mode::F73, Golden::builtin(), 4, None).unwrap(), Context::new(Mode::Exact, Golden::builtin(), 4, None).unwrap()]);
    &all[usize::from(mode == Mode::Exact)]
}

/// Pairs the `sigma`/`tau` images of basis witnesses directly: coefficients
/// of the functions and points of the divisors are both moved.
#[test]
fn pairing_is_galois_equivariant_on_witnesses() {
    let k = standard::q_delta();
    let curve = PlaneCurve::fermat(&k);
    let w = pairing::basis_witnesses(&curve).unwrap();
    let m = pairing::pairing_matrix(&curve, &w).unwrap();
    for (aut, actor, c) in [(standard::sigma(&k), galois::sigma(&k), 1i64), (standard::tau(&k), galois::tau(&k), 3)] {
        let moved: Vec<TorsionWitness<NfElem>> = w
            .iter()
            .map(|x| {
                let factors = x.factors.iter().map(|(g, e)| (g.map_coeffs(&k, |a| aut.apply(a)).unwrap(), *e)).collect();
                TorsionWitness::new(act_on_divisor(&actor, &curve, &x.divisor).unwrap(), factors)
            })
            .collect();
        for i in 0..RANK {
            for j in 0..RANK {
                let v = pairing::pairing(&curve, &moved[i], &moved[j]).unwrap();
                assert_eq!(v as i64, c * m.get(i, j) as i64 % 4, "({i}, {j})");
            }
        }
    }
}

#[test]
fn matrix_equivariance_in_both_fields() {
    for mode in [Mode::F73, Mode::Exact] {
        let c = ctx(mode);
        let (w, _) = c.weil().unwrap();
        for (name, mult) in [("sigma", 1i64), ("tau", 3)] {
            let rho = c.matrix(name).unwrap();
            // entry by entry rather than through gsp_check
            for i in 0..RANK {
                for j in 0..RANK {
                    let (u, v) = (rho.column(i), rho.column(j));
                    let mut s = 0i64;
                    for a in 0..RANK {
                        for b in 0..RANK {
                            s += u[a] as i64 * v[b] as i64 * w.get(a, b) as i64;
                        }
                    }
                    assert_eq!(s.rem_euclid(4), mult * w.get(i, j) as i64 % 4, "{mode} {name} ({i}, {j})");
                }
            }
        }
    }
}

#[test]
fn shadow_and_exact_agree_on_matrices() {
    for name in ["sigma", "tau", "theta1", "theta2", "theta3"] {
        assert_eq!(ctx(Mode::F73).matrix(name).unwrap(), ctx(Mode::Exact).matrix(name).unwrap(), "{name}");
    }
    assert_eq!(ctx(Mode::F73).weil().unwrap().0, ctx(Mode::Exact).weil().unwrap().0);
}

#[test]
fn rho_is_a_homomorphism() {
    let c = ctx(Mode::Exact);
    let (s, t) = (c.matrix("sigma").unwrap(), c.matrix("tau").unwrap());
    assert_eq!(c.matrix("tau sigma tau").unwrap(), s.pow(3).unwrap());
    assert_eq!(c.matrix("sigma tau").unwrap(), s.mul(&t).unwrap());
    assert_eq!(c.matrix("sigma^4").unwrap(), Z4Matrix::identity(RANK));
}

#[test]
fn automorphism_matrix_identities() {
    let c = ctx(Mode::F73);
    let m = |s: &str| c.matrix(s).unwrap();
    assert_eq!(m("theta2").pow(2).unwrap(), Z4Matrix::identity(RANK));
    assert_eq!(m("theta3").pow(3).unwrap(), Z4Matrix::identity(RANK));
    assert_eq!(m("theta2theta1theta2"), m("theta2").mul(&m("theta1")).unwrap().mul(&m("theta2")).unwrap());
    assert_eq!(m("theta2 theta1 theta2"), m("theta2theta1theta2"));
}

#[test]
fn mordell_weil_containment_chain() {
    let c = ctx(Mode::F73);
    let g = c.golden();
    let fixed = |t: FieldTag| {
        let f = g.mw_field(t.as_str()).unwrap();
        let mats: Vec<Z4Matrix> = f.generators_of_galois.iter().map(|s| c.matrix(s).unwrap()).collect();
        z4::fixed_submodule(&mats).unwrap()
    };
    let (q, top) = (fixed(FieldTag::Q), fixed(FieldTag::QZeta8));
    for t in [FieldTag::QI, FieldTag::QSqrt2, FieldTag::QSqrtm2] {
        let mid = fixed(t);
        assert!(q.is_submodule_of(&mid) && mid.is_submodule_of(&top), "{}", t.as_str());
        assert!(!mid.is_submodule_of(&q));
    }
    assert_eq!(top.order(), 4u64.pow(5) * 2);
}

fn combined(basis: &[TorsionWitness<u64>], model: &TorsionModel<quartic_core::PrimeField>, u: &TorsionVector) -> TorsionWitness<u64> {
    let mut factors = Vec::new();
    for (w, &k) in basis.iter().zip(u.coeffs()) {
        factors.extend(w.factors.iter().map(|(g, e)| (g.clone(), e * k as i64)));
    }
    TorsionWitness::new(model.representative_divisor(u), factors)
}

fn shadow() -> &'static TorsionModel<quartic_core::PrimeField> {
    ctx(Mode::F73).bench().shadow()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn pairing_is_bilinear_and_alternating(u in prop::array::uniform6(0i64..4), v in prop::array::uniform6(0i64..4)) {
        let m = shadow();
        let (u, v) = (TorsionVector::new(u), TorsionVector::new(v));
        let basis = m.basis_witnesses().unwrap();
        let w = m.pairing_matrix().unwrap();
        let (wu, wv) = (combined(basis, m, &u), combined(basis, m, &v));
        let mut expected = 0i64;
        for i in 0..RANK {
            for j in 0..RANK {
                expected += u.coeffs()[i] as i64 * v.coeffs()[j] as i64 * w.get(i, j) as i64;
            }
        }
        let curve = m.curve();
        prop_assert_eq!(pairing::pairing(curve, &wu, &wv).unwrap() as i64, expected.rem_euclid(4));
        prop_assert_eq!(pairing::pairing(curve, &wu, &wu).unwrap(), 0);
        let f = curve.field();
        let (a, b) = (pairing::pairing_value(curve, &wu, &wv).unwrap(), pairing::pairing_value(curve, &wv, &wu).unwrap());
        prop_assert_eq!(f.mul(&a, &b), f.one());
    }
}
