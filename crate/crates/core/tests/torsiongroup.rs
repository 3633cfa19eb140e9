use std::sync::OnceLock;

use proptest::prelude::*;
use quartic_core::field::standard;
use quartic_core::torsion::{convert_cusp_coords, Strategy as Decompose, RANK};
use quartic_core::{CuspCoordinates, Mode, PrimeField, TorsionModel, TorsionVector, Workbench};
use rayon::prelude::*;

fn shadow() -> &'static TorsionModel<PrimeField> {
    static M: OnceLock<TorsionModel<PrimeField>> = OnceLock::new();
    M.get_or_init(|| TorsionModel::fermat(&standard::shadow_f73()).unwrap())
}

fn bench(mode: Mode) -> &'static Workbench {
    static B: OnceLock<[Workbench; 3]> = OnceLock::new();
    let all = B.get_or_init(|| [Workbench::new(Mode::F73).unwrap(), Workbench::new(Mode::Exact).unwrap(), Workbench::new(Mode::TwoPhase).unwrap()]);
    &all[match mode {
        Mode::F73 => 0,
        Mode::Exact => 1,
        Mode::TwoPhase => 2,
    }]
}

fn vector() -> impl Strategy<Value = TorsionVector> {
    prop::array::uniform6(0i64..4).prop_map(TorsionVector::new)
}

#[test]
fn every_shadow_class_round_trips() {
    // the 4096 representatives are pairwise inequivalent iff each decomposes
    // back to its own vector
    let m = shadow();
    let bad: Vec<TorsionVector> = TorsionVector::all().collect::<Vec<_>>().into_par_iter().filter(|v| m.decompose(&m.representative_divisor(v)).unwrap() != *v).collect();
    assert!(bad.is_empty(), "{bad:?}");
    assert_eq!(TorsionVector::all().count(), 4096);
}

#[test]
fn binary_vectors_round_trip_in_both_fields() {
    let exact = bench(Mode::Exact).exact();
    for (i, v) in TorsionVector::all().filter(|v| v.coeffs().iter().all(|&c| c < 2)).enumerate() {
        assert_eq!(shadow().decompose(&shadow().representative_divisor(&v)).unwrap(), v);
        // exact decompositions are slow; every fourth one
        if i % 4 == 0 {
            assert_eq!(exact.decompose(&exact.representative_divisor(&v)).unwrap(), v);
        }
    }
}

#[test]
fn pairing_route_agrees_with_lexicographic_sweep() {
    let a = TorsionModel::fermat(&standard::shadow_f73()).unwrap();
    let b = TorsionModel::fermat(&standard::shadow_f73()).unwrap();
    for c in CuspCoordinates::all().step_by(131) {
        let d = a.cusp_divisor(&c);
        assert_eq!(a.decompose_with(&d, Decompose::Pairing).unwrap(), b.decompose_with(&d, Decompose::Sweep).unwrap());
    }
}

#[test]
fn cusp_coordinates_index_and_inverse() {
    for (i, c) in CuspCoordinates::all().enumerate() {
        assert_eq!(c.index(), i);
        assert_eq!(CuspCoordinates::from_torsion(&convert_cusp_coords(&c)), Some(c));
    }
    assert_eq!(CuspCoordinates::all().count(), 2048);
    assert_eq!(CuspCoordinates::from_torsion(&TorsionVector::basis(RANK - 1)), None);
    assert!(CuspCoordinates::new([4, 0, 0, 0, 0], 0).is_err());
    assert!(CuspCoordinates::new([0; 5], 2).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn shadow_round_trip(v in vector()) {
        let m = shadow();
        prop_assert_eq!(m.decompose(&m.representative_divisor(&v)).unwrap(), v);
    }

    #[test]
    fn decompose_is_additive(u in vector(), v in vector(), c in 0usize..2048) {
        let m = shadow();
        let cusp = CuspCoordinates::all().nth(c).unwrap();
        let (du, dv) = (m.representative_divisor(&u), m.cusp_divisor(&cusp));
        let sum = m.decompose(&du.add(&dv)).unwrap();
        prop_assert_eq!(sum, m.decompose(&du).unwrap().add(&m.decompose(&dv).unwrap()));
        prop_assert_eq!(m.decompose(&dv).unwrap(), cusp.to_torsion());
        let neg = m.decompose(&du.neg().add(&m.representative_divisor(&v))).unwrap();
        prop_assert_eq!(neg, v.sub(&u));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    /// Shadow proposals confirmed exactly agree with the shadow alone.
    #[test]
    fn two_phase_matches_shadow(v in vector()) {
        let exact = bench(Mode::Exact).exact();
        let d = exact.representative_divisor(&v);
        let shadow = bench(Mode::F73).decompose(&d).unwrap();
        prop_assert_eq!(bench(Mode::TwoPhase).decompose(&d).unwrap(), shadow);
        prop_assert_eq!(shadow, v);
    }
}
