//! One line per acceptance criterion. Runtime limits are checked against
//! wall-clock time on this machine.

use std::collections::{BTreeSet, HashMap};
use std::time::{Duration, Instant};

use quartic_core::census::{self, CensusError, SweepOptions, CHECKPOINT_EVERY};
use quartic_core::cache::Cache;
use quartic_core::rr::Divisor;
use quartic_core::z4::{self, howell_form};
use quartic_core::{Command, Context, CuspCoordinates, FieldTag, Golden, Mode, Report, TorsionVector, Z4Matrix};

const MIN: Duration = Duration::from_secs(60);

struct Outcome {
    pass: bool,
    detail: String,
}

fn ctx(mode: Mode, jobs: usize) -> Context {
    Context::new(mode, Golden::builtin(), jobs, None).expect("context")
}

fn reports(c: &Context, cmd: Command) -> Vec<Report> {
    c.run(cmd)
}

/// Runs the commands, requiring every report to pass within `limit`.
fn timed(c: &Context, cmds: &[Command], limit: Duration) -> Outcome {
    let t = Instant::now();
    let rs: Vec<Report> = cmds.iter().flat_map(|&cmd| reports(c, cmd)).collect();
    let el = t.elapsed();
    let failed: Vec<String> = rs.iter().filter_map(|r| r.first_failure().map(|f| format!("{}: {}", r.command, f.name))).collect();
    let pass = failed.is_empty() && el < limit;
    let mode = c.bench().mode();
    let detail = if failed.is_empty() {
        format!("{mode} {} reports, {:.1?} (limit {:?})", rs.len(), el, limit)
    } else {
        format!("{mode} failing: {}", failed.join("; "))
    };
    Outcome { pass, detail }
}

fn both(a: Outcome, b: Outcome) -> Outcome {
    Outcome { pass: a.pass && b.pass, detail: format!("{}; {}", a.detail, b.detail) }
}

fn check(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn c9() -> Outcome {
    let c = ctx(Mode::Exact, 4);
    let bench = c.bench();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(4).build().expect("pool");
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("exact.jsonl");
    let classes: Vec<_> = CuspCoordinates::all().collect();
    let t = Instant::now();
    let interrupted = {
        let (cache, _) = Cache::open(&path, bench.exact().curve()).expect("cache");
        let opts = SweepOptions { pool: Some(&pool), exact_cache: Some(&cache), stop_after_checkpoints: Some(5), ..Default::default() };
        matches!(census::effective_class_count(bench, &classes, &opts), Err(CensusError::Interrupted { done }) if done == 5 * CHECKPOINT_EVERY)
    };
    let (cache, _) = Cache::open(&path, bench.exact().curve()).expect("cache");
    let opts = SweepOptions { pool: Some(&pool), exact_cache: Some(&cache), ..Default::default() };
    let res = census::effective_class_count(bench, &classes, &opts);
    let el = t.elapsed();
    let Ok(res) = res else { return check(false, "exact sweep failed") };
    let f = ctx(Mode::F73, 4);
    let fr = timed(&f, &[Command::EffectiveCount], MIN);
    let recorded = f.golden().effective_count.f73.value;
    let shadow = census::effective_class_count(f.bench(), &classes, &SweepOptions::default()).map(|e| e.count()).ok();
    let pass = interrupted && res.resumed == 5 * CHECKPOINT_EVERY && res.count() == 166 && el < 4 * 60 * MIN && fr.pass && shadow.is_some_and(|s| s >= 166 && Some(s) == recorded);
    check(pass, format!("exact {} after kill at {} and resume ({} resumed), {:.1?}; F73 {shadow:?} recorded {recorded:?}", res.count(), 5 * CHECKPOINT_EVERY, res.resumed, el))
}

fn span(rows: &[Vec<u8>], n: usize) -> BTreeSet<Vec<u8>> {
    let mut out = BTreeSet::from([vec![0; n]]);
    let mut todo = vec![vec![0; n]];
    while let Some(v) = todo.pop() {
        for r in rows {
            let w: Vec<u8> = v.iter().zip(r).map(|(a, b)| (a + b) % 4).collect();
            if out.insert(w.clone()) {
                todo.push(w);
            }
        }
    }
    out
}

fn c11() -> Outcome {
    // Howell forms of all 2x2 matrices
    let mut howell = true;
    let mut seen: HashMap<BTreeSet<Vec<u8>>, Z4Matrix> = HashMap::new();
    for i in 0..256i64 {
        let m = Z4Matrix::new(2, 2, &[i % 4, i / 4 % 4, i / 16 % 4, i / 64]).expect("2x2");
        let h = howell_form(&m);
        let s = span(&m.row_vecs(), 2);
        howell &= span(&h.row_vecs(), 2) == s && seen.entry(s).or_insert_with(|| h.clone()) == &h;
    }

    // RR dimension against an enlarged covering
    let f = ctx(Mode::F73, 4);
    let model = f.bench().shadow();
    let rr = model.rr();
    let pts = model.curve().enumerate_points().expect("points");
    let mut covering = true;
    for k in 0..8 {
        let d = Divisor::from_pairs((0..3).map(|j| (pts[(17 * k + 5 * j) % pts.len()].clone(), 1)));
        let cover = rr.cover(&d).expect("cover");
        let mut bigger = cover.clone();
        bigger.push(rr.registry().entry(k));
        let (a, b) = (rr.space_with_cover(&d, &cover).expect("space"), rr.space_with_cover(&d, &bigger).expect("space"));
        covering &= a.dimension == b.dimension;
    }

    // pairing multipliers of sigma and tau
    let equivariant = f.weil().is_ok_and(|(w, _)| {
        [("sigma", 1), ("tau", 3)].iter().all(|&(g, c)| f.matrix(g).is_ok_and(|m| z4::gsp_check(&m, &w).ok() == Some(c)))
    });

    // decompose of representatives
    let round_trip = TorsionVector::all().step_by(37).all(|v| model.decompose(&model.representative_divisor(&v)).is_ok_and(|u| u == v));

    check(howell && covering && equivariant && round_trip, format!("howell {howell}, covering {covering}, equivariance {equivariant}, round trip {round_trip}"))
}

fn main() {
    let t = Instant::now();
    let f = ctx(Mode::F73, 4);
    let x = ctx(Mode::Exact, 4);
    let one = ctx(Mode::F73, 1);
    let criteria: Vec<(u32, &str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        (1, "Rohrlich relations", Box::new(|| timed(&f, &[Command::VerifyRohrlich], MIN))),
        (2, "key identity", Box::new(|| both(timed(&f, &[Command::KeyIdentity], 30 * Duration::from_secs(1)), timed(&x, &[Command::KeyIdentity], 10 * MIN)))),
        (3, "basis", Box::new(|| both(timed(&one, &[Command::Basis], 15 * MIN), timed(&x, &[Command::Basis], 15 * MIN)))),
        (4, "Galois matrices", Box::new(|| timed(&x, &[Command::GaloisMatrices], 10 * MIN))),
        (
            5,
            "Mordell-Weil groups",
            Box::new(|| {
                let cmds: Vec<Command> = FieldTag::ALL.iter().map(|&t| Command::MordellWeil(Some(t))).collect();
                timed(&x, &cmds, 10 * MIN)
            }),
        ),
        (6, "Weil pairing", Box::new(|| timed(&x, &[Command::WeilMatrix, Command::GspCheck], 10 * MIN))),
        (7, "automorphisms", Box::new(|| timed(&x, &[Command::Automorphisms], 10 * MIN))),
        (
            8,
            "point counts",
            Box::new(|| {
                let z = census::zeta_check();
                let counts = z.as_ref().is_ok_and(|z| z.counts == [4, 28, 28] && z.jacobian_order_f9 == 4096);
                let o = timed(&f, &[Command::ZetaCheck], MIN);
                check(counts && o.pass, format!("N = {:?}, {}", z.map(|z| z.counts).ok(), o.detail))
            }),
        ),
        (9, "effective classes", Box::new(c9)),
        (
            10,
            "quadratic points",
            Box::new(|| {
                let q = census::quadratic_points_census();
                let ok = q.as_ref().is_ok_and(|q| {
                    q.records.len() == 188 && q.counts == [12, 48, 32, 96] && q.pairs == 88 && 12 * 13 / 2 + q.pairs == 166 && q.fixed_by_conjugation == 0 && q.closed_under_conjugation
                });
                let o = timed(&f, &[Command::QuadraticPoints], MIN);
                check(ok && o.pass, format!("counts {:?}, {}", q.map(|q| (q.counts, q.pairs)).ok(), o.detail))
            }),
        ),
        (11, "property checks", Box::new(c11)),
    ];
    let mut failed = Vec::new();
    for (n, name, run) in &criteria {
        let o = run();
        println!("criterion {n}: {} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        if !o.pass {
            failed.push(*n);
        }
    }
    println!("{}/{} criteria passed in {:.1?}", criteria.len() - failed.len(), criteria.len(), t.elapsed());
    if !failed.is_empty() {
        println!("failed: {failed:?}");
        std::process::exit(1);
    }
}
