//! Counting results: point counts over small finite fields, the number of
//! effective degree-2 classes over `Q(zeta8)`, the points over quadratic
//! extensions of `Q(zeta8)`, and the maps to the elliptic quotients.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use crate::cache::{Cache, CacheError, Record};
use crate::curve::{CurveError, PlaneCurve, Point};
use crate::field::standard::{self, ALPHA, FOURTH_ROOT_2, ZETA3, ZETA4, ZETA8};
use crate::field::{Extension, Field, FieldError, NfElem, NumberField};
use crate::galois::{Mode, Workbench};
use crate::golden;
use crate::rr::Divisor;
use crate::torsion::{CuspCoordinates, TorsionError, TorsionModel};

/// Classes between two checkpoint writes.
pub const CHECKPOINT_EVERY: usize = 128;

#[derive(Debug, Error)]
pub enum CensusError {
    #[error("class {class} has h0 = {h0}; at most 1 is possible for a degree-2 divisor")]
    H0Overflow { class: String, h0: usize },
    #[error("sweep stopped after {done} classes")]
    Interrupted { done: usize },
    #[error("not on the curve: {0}")]
    NotOnCurve(String),
    #[error("conjugate pairing failed: {0}")]
    PairingFailure(String),
    #[error("degenerate sample {0}")]
    DegenerateSample(String),
    #[error(transparent)]
    Torsion(#[from] TorsionError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Cache(#[from] CacheError),
}

impl From<crate::field::MissingElement> for CensusError {
    fn from(e: crate::field::MissingElement) -> Self {
        CensusError::Curve(e.into())
    }
}

// ---------------------------------------------------------------- zeta

#[derive(Clone, Debug, Serialize)]
pub struct ZetaData {
    /// `N_1, N_2, N_3` over `F_3, F_9, F_27`.
    pub counts: [usize; 3],
    /// `sum alpha^k = q^k + 1 - N_k`.
    pub power_sums: [i64; 3],
    /// Coefficients of `L(T) = prod (1 - alpha_i T)`, constant term first.
    pub l_polynomial: Vec<i64>,
    /// `prod (1 - alpha_i^2) = L(1) L(-1)`.
    pub jacobian_order_f9: i64,
}

pub fn point_count<F: Field>(f: &F) -> Result<usize, CurveError> {
    Ok(PlaneCurve::fermat(f).enumerate_points()?.len())
}

/// `L(T)` of a genus-3 curve over `F_q` from `N_1, N_2, N_3`, by Newton's
/// identities and the functional equation.
pub fn l_polynomial(q: i64, s: [i64; 3]) -> Vec<i64> {
    let e1 = s[0];
    let e2 = (e1 * s[0] - s[1]) / 2;
    let e3 = (e2 * s[0] - e1 * s[1] + s[2]) / 3;
    let (c1, c2, c3) = (-e1, e2, -e3);
    vec![1, c1, c2, c3, q * c2, q * q * c1, q * q * q]
}

fn eval(p: &[i64], x: i64) -> i64 {
    p.iter().rev().fold(0, |acc, c| acc * x + c)
}

pub fn zeta_check() -> Result<ZetaData, CensusError> {
    let counts = [point_count(&standard::f3())?, point_count(&standard::f9())?, point_count(&standard::f27())?];
    let power_sums: [i64; 3] = std::array::from_fn(|k| 3i64.pow(k as u32 + 1) + 1 - counts[k] as i64);
    let l = l_polynomial(3, power_sums);
    let jacobian_order_f9 = eval(&l, 1) * eval(&l, -1);
    Ok(ZetaData { counts, power_sums, l_polynomial: l, jacobian_order_f9 })
}

// ------------------------------------------------------- effective count

/// `sum c_i e_i + c_6 e_6 + 2 B_0`, written on the cusps.
pub fn degree_two_divisor<F: Field>(model: &TorsionModel<F>, c: &CuspCoordinates) -> Divisor<F::Elem> {
    let mut d = model.cusp_divisor(c);
    d.add_at(model.b0(), 2);
    d
}

#[derive(Default)]
pub struct SweepOptions<'a> {
    pub pool: Option<&'a rayon::ThreadPool>,
    pub f73_cache: Option<&'a Cache>,
    pub exact_cache: Option<&'a Cache>,
    /// Stop with [`CensusError::Interrupted`] after this many checkpoints.
    pub stop_after_checkpoints: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EffectiveCount {
    pub mode: String,
    pub classes: usize,
    pub effective: Vec<CuspCoordinates>,
    /// Classes effective over `F_73`, when the shadow sweep ran.
    pub shadow_effective: Option<usize>,
    pub computed: usize,
    pub resumed: usize,
}

impl EffectiveCount {
    pub fn count(&self) -> usize {
        self.effective.len()
    }
}

struct Sweep {
    h0: BTreeMap<usize, usize>,
    computed: usize,
    resumed: usize,
}

fn sweep<F: Field>(model: &TorsionModel<F>, classes: &[CuspCoordinates], cache: Option<&Cache>, opts: &SweepOptions) -> Result<Sweep, CensusError> {
    let known = cache.map(|c| c.h0_records()).unwrap_or_default();
    let mut out = Sweep { h0: BTreeMap::new(), computed: 0, resumed: 0 };
    let mut checkpoints = 0;
    for chunk in classes.chunks(CHECKPOINT_EVERY) {
        let todo: Vec<&CuspCoordinates> = chunk.iter().filter(|c| !known.contains_key(&c.index())).collect();
        for c in chunk {
            if let Some(&h) = known.get(&c.index()) {
                out.h0.insert(c.index(), h);
                out.resumed += 1;
            }
        }
        if todo.is_empty() {
            continue;
        }
        let run = || -> Result<Vec<(usize, usize)>, CensusError> {
            todo.par_iter()
                .map(|c| Ok((c.index(), model.rr().h0(&degree_two_divisor(model, c)).map_err(TorsionError::from)?)))
                .collect()
        };
        let fresh = match opts.pool {
            Some(p) => p.install(run)?,
            None => run()?,
        };
        if let Some(cache) = cache {
            cache.append(fresh.iter().map(|&(class, h0)| Record::H0 { class, h0 }))?;
        }
        out.computed += fresh.len();
        out.h0.extend(fresh);
        checkpoints += 1;
        if opts.stop_after_checkpoints == Some(checkpoints) {
            return Err(CensusError::Interrupted { done: out.h0.len() });
        }
    }
    if let Some((&i, &h)) = out.h0.iter().find(|(_, &h)| h >= 2) {
        let c = CuspCoordinates::all().nth(i).expect("index in range");
        return Err(CensusError::H0Overflow { class: format!("{c:?}"), h0: h });
    }
    Ok(out)
}

fn effective_of(classes: &[CuspCoordinates], h0: &BTreeMap<usize, usize>) -> Vec<CuspCoordinates> {
    classes.iter().filter(|c| h0.get(&c.index()).copied().unwrap_or(0) >= 1).copied().collect()
}

/// Counts the classes among `classes` containing an effective divisor of
/// degree 2 (`h0 = 1`), in the field selected by the workbench mode.
/// `two_phase` sweeps `F_73` and confirms the effective classes exactly;
/// a class effective over `Q(delta)` stays effective after reduction, so no
/// others need the exact test.
pub fn effective_class_count(bench: &Workbench, classes: &[CuspCoordinates], opts: &SweepOptions) -> Result<EffectiveCount, CensusError> {
    let mode = bench.mode();
    let (effective, shadow_effective, computed, resumed) = match mode {
        Mode::F73 => {
            let s = sweep(bench.shadow(), classes, opts.f73_cache, opts)?;
            let e = effective_of(classes, &s.h0);
            let n = e.len();
            (e, Some(n), s.computed, s.resumed)
        }
        Mode::Exact => {
            let s = sweep(bench.exact(), classes, opts.exact_cache, opts)?;
            (effective_of(classes, &s.h0), None, s.computed, s.resumed)
        }
        Mode::TwoPhase => {
            let s = sweep(bench.shadow(), classes, opts.f73_cache, opts)?;
            let candidates = effective_of(classes, &s.h0);
            let t = sweep(bench.exact(), &candidates, opts.exact_cache, opts)?;
            (effective_of(&candidates, &t.h0), Some(candidates.len()), s.computed + t.computed, s.resumed + t.resumed)
        }
    };
    Ok(EffectiveCount { mode: mode.to_string(), classes: classes.len(), effective, shadow_effective, computed, resumed })
}

/// Known effective classes over `Q(zeta8)` inside `Q(delta)`: `P_i + P_j`
/// for cusps and `Q + Q'` for conjugate pairs with coordinates in
/// `Q(2^(1/4), zeta8)`, each with the cusp coordinates of its class
/// `[D - 2 B_0]`.
pub fn known_effective_classes(bench: &Workbench) -> Result<Vec<(String, Option<CuspCoordinates>)>, CensusError> {
    let model = bench.exact();
    let curve = model.curve();
    let sp = model.points();
    let mut divisors: Vec<(String, Divisor<_>)> = Vec::new();
    let cusps = sp.labeled().into_iter().filter(|(l, _)| !l.starts_with('P')).collect::<Vec<_>>();
    for (i, (li, pi)) in cusps.iter().enumerate() {
        for (lj, pj) in &cusps[i..] {
            divisors.push((format!("{li} + {lj}"), Divisor::from_pairs([(pi.clone(), 1), (pj.clone(), 1)])));
        }
    }
    for (name, p, q) in fourth_root_pairs(curve)? {
        divisors.push((name, Divisor::from_pairs([(p, 1), (q, 1)])));
    }
    let mut out = Vec::new();
    for (name, mut d) in divisors {
        d.add_at(model.b0(), -2);
        out.push((name, CuspCoordinates::from_torsion(&bench.decompose(&d)?)));
    }
    Ok(out)
}

/// The 24 conjugate pairs over `Q(zeta8)` with coordinates in
/// `Q(2^(1/4), zeta8)`, built in `Q(delta)`.
fn fourth_root_pairs(curve: &PlaneCurve<NumberField>) -> Result<Vec<(String, Point<NfElem>, Point<NfElem>)>, CensusError> {
    let f = curve.field();
    let c = |s, k, m| golden::coordinate(f, [s, k, m]);
    let pt = |x, y| -> Result<Point<_>, CensusError> { Ok(curve.point([x, y, f.one()])?) };
    let mut out = Vec::new();
    for i in 0..2 {
        for j in 0..4 {
            let (zi, zj) = (2 * i, 1 + 2 * j);
            out.push((format!("[a z4^{i} : z8^{zj} : 1]"), pt(c(1, 1, zi)?, c(1, 0, zj)?)?, pt(c(-1, 1, zi)?, c(1, 0, zj)?)?));
            out.push((format!("[z8^{zj} : a z4^{i} : 1]"), pt(c(1, 0, zj)?, c(1, 1, zi)?)?, pt(c(1, 0, zj)?, c(-1, 1, zi)?)?));
            out.push((format!("[z4^{i}/a : z4^{j}/a : 1]"), pt(c(1, -1, zi)?, c(1, -1, 2 * j)?)?, pt(c(-1, -1, zi)?, c(-1, -1, 2 * j)?)?));
        }
    }
    Ok(out)
}

// ----------------------------------------------------- quadratic points

type Quad = Extension<NumberField>;
type QuadElem = <Quad as Field>::Elem;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuadraticPointRecord {
    pub point: Vec<Value>,
    pub field: String,
    pub pair: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct QuadraticCensus {
    pub records: Vec<QuadraticPointRecord>,
    /// Cusps, `2^(1/4)`, `zeta3` and `sqrt(-7)` families.
    pub counts: [usize; 4],
    pub pairs: usize,
    pub fixed_by_conjugation: usize,
    /// Every conjugate of a record is itself a record.
    pub closed_under_conjugation: bool,
    /// The `theta3` and `theta3^2` images of the first `sqrt(-7)` row agree
    /// with the printed second and third rows.
    pub theta3_rows_agree: [bool; 2],
    /// `N_1 (N_1 + 1) / 2 + N_2`.
    pub pair_total: usize,
}

impl QuadraticCensus {
    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    pub fn records_json(&self) -> Value {
        serde_json::to_value(&self.records).expect("records serialize")
    }
}

struct Family {
    label: &'static str,
    field: Quad,
    curve: PlaneCurve<Quad>,
}

impl Family {
    fn new(label: &'static str, field: Quad) -> Self {
        Self { label, curve: PlaneCurve::fermat(&field), field }
    }

    fn el(&self, name: &str) -> Result<QuadElem, CensusError> {
        Ok(self.field.require(name)?)
    }

    fn pow(&self, name: &str, k: u64) -> Result<QuadElem, CensusError> {
        Ok(self.field.pow_u(&self.el(name)?, k))
    }

    fn point(&self, c: [QuadElem; 3]) -> Result<Point<QuadElem>, CensusError> {
        self.curve.point(c.clone()).map_err(|_| CensusError::NotOnCurve(format!("{} {:?}", self.label, c.map(|x| self.field.to_json(&x)))))
    }

    fn theta3(&self, p: &Point<QuadElem>) -> Result<Point<QuadElem>, CensusError> {
        let f = &self.field;
        let [x, y, z] = p.coords().clone();
        self.point([f.mul(&self.pow(ZETA8, 7)?, &y), f.mul(&self.pow(ZETA4, 3)?, &z), x])
    }
}

fn family_records(fam: &Family, points: &[Point<QuadElem>], next_pair: &mut usize) -> Result<(Vec<QuadraticPointRecord>, usize, bool), CensusError> {
    let conj = standard::quadratic_conjugation(&fam.field, "conjugation")?;
    let index: BTreeMap<&Point<QuadElem>, usize> = points.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut pair = vec![None; points.len()];
    let mut fixed = 0;
    let mut closed = true;
    for (i, p) in points.iter().enumerate() {
        let c = p.coords();
        let q = fam.point([conj.apply(&c[0])?, conj.apply(&c[1])?, conj.apply(&c[2])?])?;
        if &q == p {
            fixed += 1;
            continue;
        }
        match index.get(&q) {
            Some(&j) if pair[i].is_none() => {
                pair[i] = Some(*next_pair);
                pair[j] = Some(*next_pair);
                *next_pair += 1;
            }
            Some(_) => {}
            None => closed = false,
        }
    }
    let records = points
        .iter()
        .zip(pair)
        .map(|(p, pair)| QuadraticPointRecord { point: p.coords().iter().map(|x| fam.field.to_json(x)).collect(), field: fam.label.to_string(), pair })
        .collect();
    Ok((records, fixed, closed))
}

fn distinct(points: &[Point<QuadElem>]) -> bool {
    points.iter().collect::<BTreeSet<_>>().len() == points.len()
}

pub fn quadratic_points_census() -> Result<QuadraticCensus, CensusError> {
    let mut records = Vec::new();
    let k = standard::q_zeta8();
    for p in PlaneCurve::fermat(&k).standard_points()?.cusps() {
        records.push(QuadraticPointRecord { point: p.coords().iter().map(|x| k.to_json(x)).collect(), field: "Q_zeta8".into(), pair: None });
    }
    let cusps = records.len();

    let a2 = Family::new("Q_fourthroot2_zeta8", standard::q_fourth_root_2_zeta8());
    let z3 = Family::new("Q_zeta3_zeta8", standard::q_zeta3_zeta8());
    let a7 = Family::new("Q_sqrtm7_zeta8", standard::q_sqrtm7_zeta8());

    let mut p2 = Vec::new();
    {
        let f = &a2.field;
        let a = a2.el(FOURTH_ROOT_2)?;
        let ai = f.inv(&a)?;
        let one = f.one();
        for i in 0..4 {
            for j in 0..4 {
                let z4i = a2.pow(ZETA4, i)?;
                let z8j = a2.pow(ZETA8, 1 + 2 * j)?;
                p2.push(a2.point([f.mul(&a, &z4i), z8j.clone(), one.clone()])?);
                p2.push(a2.point([z8j, f.mul(&a, &z4i), one.clone()])?);
                p2.push(a2.point([f.mul(&ai, &z4i), f.mul(&ai, &a2.pow(ZETA4, j)?), one.clone()])?);
            }
        }
    }

    let mut p3 = Vec::new();
    {
        let f = &z3.field;
        let (w, w2) = (z3.el(ZETA3)?, z3.pow(ZETA3, 2)?);
        for i in 0..4 {
            for j in 0..4 {
                let (zi, zj) = (z3.pow(ZETA8, 1 + 2 * i)?, z3.pow(ZETA8, 1 + 2 * j)?);
                p3.push(z3.point([f.mul(&w, &zi), f.mul(&w2, &zj), f.one()])?);
                p3.push(z3.point([f.mul(&w2, &zi), f.mul(&w, &zj), f.one()])?);
            }
        }
    }

    let (row1, printed2, printed3) = {
        let f = &a7.field;
        let al = a7.el(ALPHA)?;
        let ab = f.sub(&f.one(), &al);
        let (mut r1, mut r2, mut r3) = (Vec::new(), Vec::new(), Vec::new());
        for i in 0..4 {
            for j in 0..4 {
                let (z4i, z4j) = (a7.pow(ZETA4, i)?, a7.pow(ZETA4, j)?);
                r1.push(a7.point([f.mul(&al, &z4i), f.mul(&ab, &z4j), f.one()])?);
                r1.push(a7.point([f.mul(&ab, &z4i), f.mul(&al, &z4j), f.one()])?);
                let z8 = a7.pow(ZETA8, 7 + 2 * j)?;
                let z4c = a7.pow(ZETA4, 3)?;
                r2.push(a7.point([f.mul(&ab, &z8), z4c.clone(), f.mul(&al, &z4i)])?);
                r2.push(a7.point([f.mul(&al, &z8), z4c, f.mul(&ab, &z4i)])?);
                let (u, v) = (a7.pow(ZETA8, 1 + 2 * i)?, a7.pow(ZETA8, 2 + 2 * j)?);
                r3.push(a7.point([f.one(), f.mul(&al, &u), f.mul(&ab, &v)])?);
                r3.push(a7.point([f.one(), f.mul(&ab, &u), f.mul(&al, &v)])?);
            }
        }
        (r1, r2, r3)
    };
    let image2 = row1.iter().map(|p| a7.theta3(p)).collect::<Result<Vec<_>, _>>()?;
    let image3 = image2.iter().map(|p| a7.theta3(p)).collect::<Result<Vec<_>, _>>()?;
    let as_set = |v: &[Point<QuadElem>]| v.iter().cloned().collect::<BTreeSet<_>>();
    let theta3_rows_agree = [as_set(&image2) == as_set(&printed2), as_set(&image3) == as_set(&printed3)];
    let p7: Vec<_> = row1.into_iter().chain(image2).chain(image3).collect();

    for (fam, pts) in [(&a2, &p2), (&z3, &p3), (&a7, &p7)] {
        if !distinct(pts) {
            return Err(CensusError::PairingFailure(format!("repeated point in {}", fam.label)));
        }
    }

    let mut next_pair = 0;
    let mut fixed = 0;
    let mut closed = true;
    for (fam, pts) in [(&a2, &p2), (&z3, &p3), (&a7, &p7)] {
        let (r, f, c) = family_records(fam, pts, &mut next_pair)?;
        records.extend(r);
        fixed += f;
        closed &= c;
    }
    let counts = [cusps, p2.len(), p3.len(), p7.len()];
    Ok(QuadraticCensus {
        records,
        counts,
        pairs: next_pair,
        fixed_by_conjugation: fixed,
        closed_under_conjugation: closed,
        theta3_rows_agree,
        pair_total: cusps * (cusps + 1) / 2 + next_pair,
    })
}

// -------------------------------------------------------------- Faddeev

/// `f_1, f_2, f_3` at a point, as affine pairs; `None` on the degeneracy
/// locus (`Z = 0` for `f_1, f_2`, `Y = 0` for `f_3`).
pub fn faddeev_images<F: Field>(f: &F, p: &Point<F::Elem>) -> Result<[Option<(F::Elem, F::Elem)>; 3], FieldError> {
    let [x, y, z] = p.coords();
    let ratio = |a: &F::Elem, b: &F::Elem| f.div(a, b);
    let f12 = if f.is_zero(z) {
        [None, None]
    } else {
        let (xz, yz) = (ratio(x, z)?, ratio(y, z)?);
        [Some((yz.clone(), f.square(&xz))), Some((xz, f.square(&yz)))]
    };
    let f3 = if f.is_zero(y) { None } else { Some((ratio(x, y)?, f.square(&ratio(z, y)?))) };
    Ok([f12[0].clone(), f12[1].clone(), f3])
}

/// `Y^2 = 1 + s X^4`.
fn on_quartic<F: Field>(f: &F, (x, y): &(F::Elem, F::Elem), s: i64) -> bool {
    f.square(y) == f.add(&f.one(), &f.mul(&f.from_i64(s), &f.pow_u(x, 4)))
}

/// `C_lambda -> C'_lambda`, `(a, b) -> (2 lambda a^2 / (1 - b), 4 lambda a / (1 - b))`.
pub fn to_weierstrass<F: Field>(f: &F, lambda: &F::Elem, (a, b): &(F::Elem, F::Elem)) -> Result<(F::Elem, F::Elem), FieldError> {
    let d = f.sub(&f.one(), b);
    let two_l = f.mul(&f.from_i64(2), lambda);
    Ok((f.div(&f.mul(&two_l, &f.square(a)), &d)?, f.div(&f.mul(&f.add(&two_l, &two_l), a), &d)?))
}

/// `C'_lambda -> C_lambda`, `(u, v) -> (2u / v, 1 - 8 lambda u / v^2)`.
pub fn from_weierstrass<F: Field>(f: &F, lambda: &F::Elem, (u, v): &(F::Elem, F::Elem)) -> Result<(F::Elem, F::Elem), FieldError> {
    let a = f.div(&f.mul(&f.from_i64(2), u), v)?;
    let b = f.sub(&f.one(), &f.div(&f.mul(&f.mul(&f.from_i64(8), lambda), u), &f.square(v))?);
    Ok((a, b))
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct FaddeevData {
    pub samples: usize,
    /// Images of `f_1` and `f_2` on `Y^2 = 1 - X^4`.
    pub f1_on_e1: bool,
    pub f2_on_e1: bool,
    /// Whether the images of `f_3` lie on `Y^2 = 1 + X^4`, resp. `1 - X^4`.
    pub f3_on_plus: bool,
    pub f3_on_minus: bool,
    pub round_trips: usize,
    /// Every round trip through `Y^2 = X^3 + 4X` returned the starting point
    /// and every image was on the cubic.
    pub round_trip_ok: bool,
    /// `(u, v)` for the `F_73` sample, and whether it maps back.
    pub shadow_image: Option<(u64, u64)>,
    pub shadow_round_trip: bool,
}

impl FaddeevData {
    pub fn e3_form(&self) -> &'static str {
        match (self.f3_on_plus, self.f3_on_minus) {
            (true, false) => "Y^2 = 1 + X^4",
            (false, true) => "Y^2 = 1 - X^4",
            (true, true) => "both",
            (false, false) => "neither",
        }
    }
}

fn check_samples<F: Field>(f: &F, points: &[Point<F::Elem>], data: &mut FaddeevData) -> Result<(), CensusError> {
    let one = f.one();
    for p in points {
        let imgs = faddeev_images(f, p)?;
        if imgs.iter().all(Option::is_none) {
            return Err(CensusError::DegenerateSample(format!("{:?}", p.coords())));
        }
        data.samples += 1;
        if let Some(i) = &imgs[0] {
            data.f1_on_e1 &= on_quartic(f, i, -1);
            let (a, b) = i;
            if !f.is_zero(a) && *b != one {
                let (u, v) = to_weierstrass(f, &one, i)?;
                let on_cubic = f.square(&v) == f.add(&f.pow_u(&u, 3), &f.mul(&f.from_i64(4), &u));
                data.round_trip_ok &= on_cubic && from_weierstrass(f, &one, &(u, v))? == *i;
                data.round_trips += 1;
            }
        }
        if let Some(i) = &imgs[1] {
            data.f2_on_e1 &= on_quartic(f, i, -1);
        }
        if let Some(i) = &imgs[2] {
            data.f3_on_plus &= on_quartic(f, i, 1);
            data.f3_on_minus &= on_quartic(f, i, -1);
        }
    }
    Ok(())
}

/// Runs the checks on the labeled points over `Q(delta)` and on every point
/// over `F_73`, plus the fixed `F_73` sample `(a, b)` on `Y^2 = 1 - X^4`.
pub fn faddeev_maps_check(shadow_sample: (u64, u64)) -> Result<FaddeevData, CensusError> {
    let mut data = FaddeevData { f1_on_e1: true, f2_on_e1: true, f3_on_plus: true, f3_on_minus: true, round_trip_ok: true, ..Default::default() };
    let k = standard::q_delta();
    let exact: Vec<_> = PlaneCurve::fermat(&k).standard_points()?.labeled().into_iter().map(|(_, p)| p).collect();
    check_samples(&k, &exact, &mut data)?;
    let f = standard::shadow_f73();
    let pts = PlaneCurve::fermat(&f).enumerate_points()?;
    check_samples(&f, &pts, &mut data)?;

    let s = (shadow_sample.0 % f.modulus(), shadow_sample.1 % f.modulus());
    if !on_quartic(&f, &s, -1) {
        return Err(CensusError::NotOnCurve(format!("{s:?} on Y^2 = 1 - X^4")));
    }
    let one = f.one();
    let uv = to_weierstrass(&f, &one, &s)?;
    data.shadow_round_trip = from_weierstrass(&f, &one, &uv)? == s;
    data.shadow_image = Some(uv);
    Ok(data)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn l_polynomial_of_supersingular_curve() {
        // six eigenvalues +-sqrt(-3), three of each sign
        assert_eq!(l_polynomial(3, [0, -18, 0]), vec![1, 0, 9, 0, 27, 0, 27]);
    }

    #[test]
    fn weierstrass_maps_at_lambda_one() {
        let f = standard::shadow_f73();
        let one = f.one();
        let uv = to_weierstrass(&f, &one, &(18, 27)).unwrap();
        assert_eq!(from_weierstrass(&f, &one, &uv).unwrap(), (18, 27));
    }

    #[test]
    fn f1_of_b0() {
        let k = standard::q_zeta8();
        let sp = PlaneCurve::fermat(&k).standard_points().unwrap();
        let b0 = sp.get("B0").unwrap();
        let [f1, _, _] = faddeev_images(&k, &b0).unwrap();
        assert_eq!(f1, Some((k.zero(), k.one())));
    }
}
