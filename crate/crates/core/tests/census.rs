use std::collections::BTreeSet;

use quartic_core::cache::Cache;
use quartic_core::census::{self, CensusError, SweepOptions, CHECKPOINT_EVERY};
use quartic_core::{Command, Context, CuspCoordinates, Golden, Mode, Workbench};

fn effective_exact(bench: &Workbench) -> Vec<CuspCoordinates> {
    let classes: Vec<_> = CuspCoordinates::all().collect();
    census::effective_class_count(bench, &classes, &SweepOptions::default()).unwrap().effective
}

/// Each eigenvalue of Frobenius over F_3 squares to -3, so
/// N_k = 3^k + 1 - 6 (i sqrt 3)^k summed over the three conjugate pairs.
#[test]
fn zeta_data_matches_eigenvalues() {
    let z = census::zeta_check().unwrap();
    let alpha_sum = |k: u32| -> i64 { if k % 2 == 1 { 0 } else { 6 * (-3i64).pow(k / 2) } };
    for k in 1..=3u32 {
        assert_eq!(z.counts[k as usize - 1] as i64, 3i64.pow(k) + 1 - alpha_sum(k));
    }
    assert_eq!(z.l_polynomial, vec![1, 0, 9, 0, 27, 0, 27]);
    assert_eq!(z.jacobian_order_f9, 64 * 64);
}

#[test]
fn brute_count_over_f3() {
    // x^4 is 0 or 1 mod 3
    let mut n = 0;
    for x in 0..3i64 {
        for y in 0..3i64 {
            for z in 0..3i64 {
                if (x, y, z) != (0, 0, 0) && (x.pow(4) + y.pow(4) - z.pow(4)).rem_euclid(3) == 0 {
                    n += 1;
                }
            }
        }
    }
    assert_eq!(n / 2, census::zeta_check().unwrap().counts[0]);
}

#[test]
fn exact_sweep_survives_interruption() {
    let bench = Workbench::new(Mode::Exact).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("exact.jsonl");
    let classes: Vec<_> = CuspCoordinates::all().collect();
    {
        let (cache, _) = Cache::open(&path, bench.exact().curve()).unwrap();
        let opts = SweepOptions { exact_cache: Some(&cache), stop_after_checkpoints: Some(3), ..Default::default() };
        match census::effective_class_count(&bench, &classes, &opts) {
            Err(CensusError::Interrupted { done }) => assert_eq!(done, 3 * CHECKPOINT_EVERY),
            other => panic!("expected interruption, got {:?}", other.map(|e| e.count())),
        }
    }
    let (cache, _) = Cache::open(&path, bench.exact().curve()).unwrap();
    assert_eq!(cache.h0_records().len(), 3 * CHECKPOINT_EVERY);
    let opts = SweepOptions { exact_cache: Some(&cache), ..Default::default() };
    let res = census::effective_class_count(&bench, &classes, &opts).unwrap();
    assert_eq!(res.resumed, 3 * CHECKPOINT_EVERY);
    assert_eq!(res.computed + res.resumed, classes.len());
    assert_eq!(res.count(), 166);
    // a second pass reads everything back
    let again = census::effective_class_count(&bench, &classes, &opts).unwrap();
    assert_eq!((again.computed, again.effective), (0, res.effective));
}

#[test]
fn known_pairs_are_found_and_account_for_the_count() {
    let bench = Workbench::new(Mode::Exact).unwrap();
    let eff: BTreeSet<_> = effective_exact(&bench).into_iter().collect();
    let known = census::known_effective_classes(&bench).unwrap();
    assert!(known.len() >= 20);
    let classes: BTreeSet<_> = known.iter().map(|(n, c)| c.unwrap_or_else(|| panic!("{n} outside the cusp classes"))).collect();
    assert_eq!(classes.len(), known.len());
    assert!(classes.is_subset(&eff));
    // unordered pairs of the 12 cusps plus the conjugate pairs of quadratic points
    let q = census::quadratic_points_census().unwrap();
    assert_eq!(q.counts[0], 12);
    assert_eq!(12 * 13 / 2 + q.pairs, eff.len());
    assert_eq!(q.pair_total, eff.len());
}

#[test]
fn effective_classes_are_galois_stable() {
    let ctx = Context::new(Mode::Exact, Golden::builtin(), 4, None).unwrap();
    let eff: BTreeSet<_> = effective_exact(ctx.bench()).into_iter().collect();
    for g in ["sigma", "tau"] {
        let m = ctx.matrix(g).unwrap();
        for c in &eff {
            let img = m.apply(&c.to_torsion().to_vec()).unwrap();
            let img = CuspCoordinates::from_torsion(&quartic_core::TorsionVector::from_slice(&img)).expect("cusp class");
            assert!(eff.contains(&img), "{g} moves {c:?} out");
        }
    }
}

#[test]
fn shadow_count_bounds_the_exact_count() {
    let f = Workbench::new(Mode::F73).unwrap();
    let classes: Vec<_> = CuspCoordinates::all().collect();
    let shadow: BTreeSet<_> = census::effective_class_count(&f, &classes, &SweepOptions::default()).unwrap().effective.into_iter().collect();
    let exact: BTreeSet<_> = effective_exact(&Workbench::new(Mode::Exact).unwrap()).into_iter().collect();
    assert!(exact.is_subset(&shadow));
    let two = census::effective_class_count(&Workbench::new(Mode::TwoPhase).unwrap(), &classes, &SweepOptions::default()).unwrap();
    assert_eq!(two.effective.into_iter().collect::<BTreeSet<_>>(), exact);
    assert_eq!(two.shadow_effective, Some(shadow.len()));
}

#[test]
fn quadratic_census_is_closed_under_conjugation() {
    let q = census::quadratic_points_census().unwrap();
    assert!(q.closed_under_conjugation);
    assert_eq!(q.fixed_by_conjugation, 0);
    assert_eq!(q.records.len(), q.total());
    let paired = q.records.iter().filter(|r| r.pair.is_some()).count();
    assert_eq!(paired, 2 * q.pairs);
    assert_eq!(paired + q.counts[0], q.total());
    assert!(q.theta3_rows_agree.iter().all(|&b| b));
}

#[test]
fn reports_do_not_depend_on_parallelism() {
    let run = |jobs| {
        let c = Context::new(Mode::F73, Golden::builtin(), jobs, None).unwrap();
        c.run(Command::All).iter().map(|r| r.without_timing()).collect::<Vec<_>>()
    };
    let a = run(1);
    assert!(a.iter().all(|r| r.pass));
    assert_eq!(a, run(4));
}
