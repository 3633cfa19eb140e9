//! The verification commands. Every value is recomputed from the curve and
//! compared against the golden data; errors inside a command become failed
//! checks rather than aborting the run.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use parking_lot::Mutex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::cache::{CacheError, Caches};
use crate::census::{self, CensusError, SweepOptions};
use crate::curve::{CurveError, Form, PlaneCurve, Point};
use crate::explicit;
use crate::field::{Field, MissingElement, NfElem};
use crate::galois::{self, act_on_point, GaloisActor, Mode, Workbench};
use crate::golden::{self, Golden, PointSpec, Rows, Terms};
use crate::pairing::{self, TorsionWitness};
use crate::report::{Check, Provenance, Report};
use crate::rr::Divisor;
use crate::torsion::{CuspCoordinates, TorsionError, TorsionVector, RANK};
use crate::z4::{self, Z4Error, Z4Matrix};

use Provenance::{Derived, Identity, Published};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("unknown command `{0}`")]
    UnknownCommand(String),
    #[error("unknown field tag `{0}` (expected Q, Q_i, Q_sqrt2, Q_sqrtm2 or Q_zeta8)")]
    UnknownField(String),
    #[error("unknown actor `{0}`")]
    UnknownActor(String),
    #[error("golden data has no entry for {0}")]
    MissingGolden(String),
    #[error("cannot build thread pool: {0}")]
    Pool(String),
    #[error(transparent)]
    Torsion(#[from] TorsionError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Z4(#[from] Z4Error),
    #[error(transparent)]
    Census(#[from] CensusError),
    #[error(transparent)]
    Cache(#[from] CacheError),
}

impl From<MissingElement> for VerifyError {
    fn from(e: MissingElement) -> Self {
        VerifyError::Curve(e.into())
    }
}

impl From<crate::rr::RrError> for VerifyError {
    fn from(e: crate::rr::RrError) -> Self {
        VerifyError::Torsion(e.into())
    }
}

impl From<crate::pairing::PairingError> for VerifyError {
    fn from(e: crate::pairing::PairingError) -> Self {
        VerifyError::Torsion(e.into())
    }
}

type Res<T> = Result<T, VerifyError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum FieldTag {
    Q,
    QI,
    QSqrt2,
    QSqrtm2,
    QZeta8,
}

impl FieldTag {
    pub const ALL: [FieldTag; 5] = [FieldTag::Q, FieldTag::QI, FieldTag::QSqrt2, FieldTag::QSqrtm2, FieldTag::QZeta8];

    pub fn as_str(&self) -> &'static str {
        match self {
            FieldTag::Q => "Q",
            FieldTag::QI => "Q_i",
            FieldTag::QSqrt2 => "Q_sqrt2",
            FieldTag::QSqrtm2 => "Q_sqrtm2",
            FieldTag::QZeta8 => "Q_zeta8",
        }
    }
}

impl FromStr for FieldTag {
    type Err = VerifyError;

    fn from_str(s: &str) -> Res<Self> {
        FieldTag::ALL.into_iter().find(|t| t.as_str().eq_ignore_ascii_case(s)).ok_or_else(|| VerifyError::UnknownField(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    VerifyRohrlich,
    KeyIdentity,
    Basis,
    GaloisMatrices,
    WeilMatrix,
    GspCheck,
    Automorphisms,
    /// One field, or all five with the containment chain.
    MordellWeil(Option<FieldTag>),
    ZetaCheck,
    EffectiveCount,
    QuadraticPoints,
    FaddeevMaps,
    All,
}

impl Command {
    /// The commands `all` runs, in order.
    pub const SUITE: [Command; 12] = [
        Command::VerifyRohrlich,
        Command::KeyIdentity,
        Command::Basis,
        Command::GaloisMatrices,
        Command::WeilMatrix,
        Command::GspCheck,
        Command::Automorphisms,
        Command::MordellWeil(None),
        Command::ZetaCheck,
        Command::EffectiveCount,
        Command::QuadraticPoints,
        Command::FaddeevMaps,
    ];

    pub fn parse(name: &str, arg: Option<&str>) -> Res<Self> {
        let c = match name {
            "verify-rohrlich" => Command::VerifyRohrlich,
            "key-identity" => Command::KeyIdentity,
            "basis" => Command::Basis,
            "galois-matrices" => Command::GaloisMatrices,
            "weil-matrix" => Command::WeilMatrix,
            "gsp-check" => Command::GspCheck,
            "automorphisms" => Command::Automorphisms,
            "mordell-weil" => Command::MordellWeil(arg.map(str::parse).transpose()?),
            "zeta-check" => Command::ZetaCheck,
            "effective-count" => Command::EffectiveCount,
            "quadratic-points" => Command::QuadraticPoints,
            "faddeev-maps" => Command::FaddeevMaps,
            "all" => Command::All,
            _ => return Err(VerifyError::UnknownCommand(name.to_string())),
        };
        Ok(c)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Command::VerifyRohrlich => "verify-rohrlich",
            Command::KeyIdentity => "key-identity",
            Command::Basis => "basis",
            Command::GaloisMatrices => "galois-matrices",
            Command::WeilMatrix => "weil-matrix",
            Command::GspCheck => "gsp-check",
            Command::Automorphisms => "automorphisms",
            Command::MordellWeil(_) => "mordell-weil",
            Command::ZetaCheck => "zeta-check",
            Command::EffectiveCount => "effective-count",
            Command::QuadraticPoints => "quadratic-points",
            Command::FaddeevMaps => "faddeev-maps",
            Command::All => "all",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Command::MordellWeil(Some(t)) => write!(f, "mordell-weil {}", t.as_str()),
            c => f.write_str(c.name()),
        }
    }
}

fn eq<T: Serialize>(name: impl Into<String>, p: Provenance, expected: impl Serialize, computed: Res<T>) -> Check {
    match computed {
        Ok(v) => Check::equal(name, p, expected, v),
        Err(e) => Check::error(name, p, expected, e),
    }
}

fn truth(name: impl Into<String>, p: Provenance, computed: Res<bool>) -> Check {
    eq(name, p, true, computed)
}

fn rows(m: &Z4Matrix) -> Vec<Vec<u8>> {
    m.row_vecs()
}

fn vector(c: &[u8; 6]) -> TorsionVector {
    TorsionVector::from_slice(c)
}

fn cusp(c: &[u8; 6]) -> Res<CuspCoordinates> {
    Ok(CuspCoordinates::new([c[0], c[1], c[2], c[3], c[4]], c[5])?)
}

/// `g` and `h` agree up to a nonzero constant modulo the curve.
pub fn proportional_mod_curve<F: Field>(curve: &PlaneCurve<F>, g: &Form<F::Elem>, h: &Form<F::Elem>) -> bool {
    if g.degree() != h.degree() {
        return false;
    }
    let f = curve.field();
    let (rg, rh) = (curve.reduce(g), curve.reduce(h));
    let Some((m, a)) = rg.terms().find(|(_, c)| !f.is_zero(c)).map(|(m, c)| (*m, c.clone())) else {
        return false;
    };
    let b = rh.coeff(f, &m);
    if f.is_zero(&b) {
        return false;
    }
    let c = f.div(&a, &b).expect("nonzero");
    rg.sub(f, &rh.scale(f, &c)).is_zero()
}

/// A witness for `sum u_i e_i` built from the basis witnesses.
fn combined_witness<E: Clone + Ord>(basis: &[TorsionWitness<E>], d: Divisor<E>, u: &TorsionVector) -> TorsionWitness<E> {
    let mut factors = Vec::new();
    for (w, &k) in basis.iter().zip(u.coeffs()) {
        factors.extend(w.factors.iter().map(|(g, e)| (g.clone(), e * k as i64)));
    }
    TorsionWitness::new(d, factors)
}

const CUSP_LABELS: [&str; 12] = ["A0", "A1", "A2", "A3", "B0", "B1", "B2", "B3", "C0", "C1", "C2", "C3"];

/// State shared by the commands of one run.
pub struct Context {
    bench: Workbench,
    golden: Golden,
    pool: rayon::ThreadPool,
    caches: Option<Caches>,
    matrices: Mutex<BTreeMap<String, Z4Matrix>>,
    weil: Mutex<Option<(Z4Matrix, Vec<(usize, usize, bool)>)>>,
}

impl Context {
    pub fn new(mode: Mode, golden: Golden, jobs: usize, cache_dir: Option<&Path>) -> Res<Self> {
        let bench = Workbench::new(mode)?;
        let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build().map_err(|e| VerifyError::Pool(e.to_string()))?;
        let caches = match cache_dir {
            Some(dir) => {
                let (c, status) = Caches::open(dir, bench.shadow().curve(), bench.exact_curve())?;
                log::info!("cache {}: f73 {:?}, exact {:?}", dir.display(), status[0], status[1]);
                c.f73.load_memo(bench.shadow())?;
                c.exact.load_memo(bench.exact())?;
                Some(c)
            }
            None => None,
        };
        Ok(Self { bench, golden, pool, caches, matrices: Mutex::default(), weil: Mutex::default() })
    }

    pub fn bench(&self) -> &Workbench {
        &self.bench
    }

    pub fn golden(&self) -> &Golden {
        &self.golden
    }

    /// Writes new decomposition memo entries to the cache.
    pub fn flush(&self) -> Res<()> {
        if let Some(c) = &self.caches {
            c.f73.store_memo(self.bench.shadow())?;
            c.exact.store_memo(self.bench.exact())?;
        }
        Ok(())
    }

    /// One report per command; `all` expands to [`Command::SUITE`].
    pub fn run(&self, cmd: Command) -> Vec<Report> {
        if cmd == Command::All {
            return Command::SUITE.iter().flat_map(|&c| self.run(c)).collect();
        }
        let start = Instant::now();
        let mut r = Report::new(&cmd.to_string(), self.bench.mode().as_str());
        match cmd {
            Command::VerifyRohrlich => self.verify_rohrlich(&mut r),
            Command::KeyIdentity => self.key_identity(&mut r),
            Command::Basis => self.basis(&mut r),
            Command::GaloisMatrices => self.galois_matrices(&mut r),
            Command::WeilMatrix => self.weil_matrix(&mut r),
            Command::GspCheck => self.gsp_check(&mut r),
            Command::Automorphisms => self.automorphisms(&mut r),
            Command::MordellWeil(tag) => self.mordell_weil(&mut r, tag),
            Command::ZetaCheck => self.zeta_check(&mut r),
            Command::EffectiveCount => self.effective_count(&mut r),
            Command::QuadraticPoints => self.quadratic_points(&mut r),
            Command::FaddeevMaps => self.faddeev_maps(&mut r),
            Command::All => unreachable!(),
        }
        if let Err(e) = self.flush() {
            log::warn!("cannot write cache: {e}");
        }
        r.timing_ms = start.elapsed().as_millis() as u64;
        vec![r]
    }

    // ------------------------------------------------------------ helpers

    fn point(&self, spec: &PointSpec) -> Res<Point<NfElem>> {
        Ok(golden::resolve_point(self.bench.exact_curve(), self.bench.exact().points(), spec)?)
    }

    fn divisor(&self, terms: &Terms) -> Res<Divisor<NfElem>> {
        Ok(golden::resolve_divisor(self.bench.exact_curve(), self.bench.exact().points(), terms)?)
    }

    /// `sum k (Z - B_0)` over the terms `(Z, k)`.
    fn relation(&self, terms: &Terms) -> Res<Divisor<NfElem>> {
        let mut d = self.divisor(terms)?;
        d.add_at(self.bench.exact().b0(), -terms.iter().map(|(_, k)| k).sum::<i64>());
        Ok(d)
    }

    fn principal(&self, d: &Divisor<NfElem>) -> Res<bool> {
        Ok(self.bench.linearly_equivalent(d, &Divisor::zero())?)
    }

    /// Actors written as words, e.g. `tau sigma` (apply `sigma` first) or
    /// `sigma^2`.
    pub fn actor(&self, spec: &str) -> Res<GaloisActor> {
        let k = self.bench.field();
        let mut out: Option<GaloisActor> = None;
        for word in spec.split_whitespace() {
            let (name, pow) = match word.split_once('^') {
                Some((n, p)) => (n, p.parse::<usize>().map_err(|_| VerifyError::UnknownActor(spec.to_string()))?),
                None => (word, 1),
            };
            let base = match name {
                "sigma" => galois::sigma(k),
                "tau" => galois::tau(k),
                "id" => galois::identity(k),
                "theta1" => galois::theta1(k),
                "theta2" => galois::theta2(k),
                "theta3" => galois::theta3(k),
                "theta2theta1theta2" => galois::theta2_theta1_theta2(k),
                _ => return Err(VerifyError::UnknownActor(spec.to_string())),
            };
            for _ in 0..pow {
                out = Some(match out {
                    None => base.clone(),
                    Some(a) => a.compose(&base, k).ok_or_else(|| VerifyError::UnknownActor(spec.to_string()))?,
                });
            }
        }
        Ok(out.ok_or_else(|| VerifyError::UnknownActor(spec.to_string()))?.relabel(spec))
    }

    /// The matrix of an actor, rebuilt from the curve action.
    pub fn matrix(&self, spec: &str) -> Res<Z4Matrix> {
        if let Some(m) = self.matrices.lock().get(spec) {
            return Ok(m.clone());
        }
        let m = self.bench.action_matrix(&self.actor(spec)?)?;
        self.matrices.lock().insert(spec.to_string(), m.clone());
        Ok(m)
    }

    pub fn weil(&self) -> Res<(Z4Matrix, Vec<(usize, usize, bool)>)> {
        let mut w = self.weil.lock();
        if w.is_none() {
            *w = Some(self.bench.pairing_matrix(&self.golden.weil.spot_entries)?);
        }
        Ok(w.clone().expect("set above"))
    }

    fn action_tables(&self, r: &mut Report, cusps: &BTreeMap<String, Vec<String>>, ps: &BTreeMap<String, Vec<PointSpec>>) {
        let curve = self.bench.exact_curve();
        let sp = self.bench.exact().points();
        for (name, expected) in cusps {
            let computed = (|| -> Res<Vec<String>> {
                let a = self.actor(name)?;
                CUSP_LABELS
                    .iter()
                    .map(|l| {
                        let img = act_on_point(&a, curve, &sp.get(l).expect("cusp label"))?;
                        Ok(sp.label_of(&img).unwrap_or_else(|| "?".into()))
                    })
                    .collect()
            })();
            r.push(eq(format!("{name} on the cusps"), Published, expected, computed));
        }
        for (name, expected) in ps {
            let computed = (|| -> Res<bool> {
                let a = self.actor(name)?;
                for (p, e) in sp.p()?.iter().zip(expected) {
                    if act_on_point(&a, curve, p)? != self.point(e)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            })();
            r.push(truth(format!("{name} on P1, P2, P3"), Published, computed));
        }
    }

    // ----------------------------------------------------------- commands

    fn verify_rohrlich(&self, r: &mut Report) {
        let g = &self.golden.rohrlich;
        for rel in &g.relations {
            r.push(truth(&rel.name, g.provenance, self.relation(&rel.terms).and_then(|d| self.principal(&d))));
        }
        let beta = &g.four_term_beta;
        r.push(truth(format!("{} (four-term form; the printed beta relation has three terms)", beta.name), Derived, self.relation(&beta.terms).and_then(|d| self.principal(&d))));
        for row in &g.table {
            let z = PointSpec::Label(row.point.clone());
            let class = || -> Res<Divisor<NfElem>> { Ok(self.bench.exact().point_class(&self.point(&z)?)) };
            let expected = cusp(&row.cusp).map(|c| c.to_torsion());
            match expected {
                Ok(v) => {
                    r.push(eq(format!("{} by decomposition", row.name), g.provenance, v.coeffs(), class().and_then(|d| Ok(*self.bench.decompose(&d)?.coeffs()))));
                    let equiv = (|| {
                        let c = self.bench.exact().cusp_divisor(&cusp(&row.cusp)?);
                        Ok(self.bench.linearly_equivalent(&class()?, &c)?)
                    })();
                    r.push(truth(format!("{} by equivalence with the cusp divisor", row.name), g.provenance, equiv));
                }
                Err(e) => r.push(Check::error(&row.name, g.provenance, row.cusp, e)),
            }
        }
    }

    fn key_identity(&self, r: &mut Report) {
        let g = &self.golden.key_identity;
        let d = match self.divisor(&g.divisor) {
            Ok(d) => d,
            Err(e) => return r.push(Check::error("key divisor", g.provenance, "resolvable", e)),
        };
        r.push(truth("key divisor is principal", g.provenance, self.principal(&d)));
        let mode = self.bench.mode();
        if mode != Mode::Exact {
            self.key_identity_shadow(r, &d);
        }
        if mode != Mode::F73 {
            self.key_identity_exact(r, &d);
        }
    }

    /// Over `F_73` both cubics split completely, so the full divisors are
    /// found by enumeration.
    fn key_identity_shadow(&self, r: &mut Report, d: &Divisor<NfElem>) {
        let model = self.bench.shadow();
        let (curve, f) = (model.curve(), model.field());
        let run = || -> Res<(usize, usize, bool)> {
            let (g1, g2) = (explicit::key_g1(f)?, explicit::key_g2(f)?);
            let mut diff = Divisor::zero();
            let (mut n1, mut n2) = (0, 0);
            for p in curve.enumerate_points()? {
                let (o1, o2) = (curve.ord_at(&p, &g1)?, curve.ord_at(&p, &g2)?);
                n1 += o1;
                n2 += o2;
                diff.add_at(&p, o2 as i64 - o1 as i64);
            }
            Ok((n1, n2, diff == self.bench.reduce(d)?))
        };
        match run() {
            Ok((n1, n2, same)) => {
                r.push(Check::equal("zeros of g1 over F73 with multiplicity", Derived, 12, n1));
                r.push(Check::equal("zeros of g2 over F73 with multiplicity", Derived, 12, n2));
                r.push(Check::truth("div(g2) - div(g1) = key divisor over F73", Published, same));
            }
            Err(e) => r.push(Check::error("div(g2) - div(g1) = key divisor over F73", Published, true, e)),
        }
    }

    /// Orders on the support, equal residual degrees, and proportionality
    /// with the function found by Riemann-Roch.
    fn key_identity_exact(&self, r: &mut Report, d: &Divisor<NfElem>) {
        let model = self.bench.exact();
        let (curve, f) = (model.curve(), model.field());
        let forms = explicit::key_g1(f).and_then(|a| Ok((a, explicit::key_g2(f)?)));
        let (g1, g2) = match forms {
            Ok(x) => x,
            Err(e) => return r.push(Check::error("key cubics", Published, "constructible", e)),
        };
        let orders = (|| -> Res<(Vec<i64>, Vec<i64>, [usize; 2])> {
            let (mut want, mut got, mut on) = (Vec::new(), Vec::new(), [0, 0]);
            for (p, k) in d.iter() {
                let (o1, o2) = (curve.ord_at(p, &g1)?, curve.ord_at(p, &g2)?);
                want.push(k);
                got.push(o2 as i64 - o1 as i64);
                on[0] += o1;
                on[1] += o2;
            }
            Ok((want, got, [12 - on[0], 12 - on[1]]))
        })();
        match orders {
            Ok((want, got, residual)) => {
                r.push(Check::equal("ord(g2) - ord(g1) on the support of the key divisor", Published, want, got));
                r.push(Check::equal("zeros of g1, g2 off the support", Derived, [2, 2], residual));
            }
            Err(e) => r.push(Check::error("ord(g2) - ord(g1) on the support of the key divisor", Published, true, e)),
        }
        let prop = (|| -> Res<bool> {
            let Some((g, den)) = model.rr().principal_function(&d.neg())? else {
                return Ok(false);
            };
            let h = Form::product(f, &den);
            Ok(proportional_mod_curve(curve, &g2.mul(f, &h), &g1.mul(f, &g)))
        })();
        r.push(truth("g2/g1 agrees with the Riemann-Roch function of the key divisor", Published, prop));
    }

    fn basis(&self, r: &mut Report) {
        let b = &self.golden.basis;
        let model = self.bench.exact();
        let e6p = model.basis_divisor(RANK - 1).clone();
        let twice = e6p.scale(2);
        r.push(eq("2e'_6 decomposes", b.twice_e6_prime.provenance, b.twice_e6_prime.value, self.bench.decompose(&twice).map(|v| *v.coeffs()).map_err(VerifyError::from)));
        let ki = &self.golden.key_identity;
        r.push(truth(
            format!("2e'_6 = {:?} in cusp coordinates", ki.class_of_twice_e6_prime),
            ki.provenance,
            cusp(&ki.class_of_twice_e6_prime).and_then(|c| Ok(self.bench.linearly_equivalent(&twice, &model.cusp_divisor(&c))?)),
        ));
        r.push(eq(
            "e_6 decomposes",
            b.e6_torsion.provenance,
            b.e6_torsion.value,
            CuspCoordinates::new([0; 5], 1).map_err(VerifyError::from).and_then(|c| Ok(*self.bench.decompose(&model.cusp_divisor(&c))?.coeffs())),
        ));
        let classes: Vec<_> = CuspCoordinates::all().collect();
        r.push(Check::equal("cusp classes", b.cusp_classes.provenance, b.cusp_classes.value, classes.len()));
        let shadow = self.bench.shadow();
        let e6s = shadow.basis_divisor(RANK - 1);
        let matches = self.pool.install(|| {
            classes.par_iter().map(|c| Ok(usize::from(shadow.linearly_equivalent(e6s, &shadow.cusp_divisor(c))?))).sum::<Res<usize>>()
        });
        r.push(eq("cusp classes equivalent to e'_6 over F73", b.matches_of_e6_prime.provenance, b.matches_of_e6_prime.value, matches));
    }

    fn galois_matrices(&self, r: &mut Report) {
        let g = &self.golden.galois;
        let (rs, rt) = (self.matrix("sigma"), self.matrix("tau"));
        r.push(eq("rho(sigma)", g.provenance, &g.rho_sigma, rs.as_ref().map(rows).map_err(clone_err)));
        r.push(eq("rho(tau)", g.provenance, &g.rho_tau, rt.as_ref().map(rows).map_err(clone_err)));
        let (rs, rt) = match (rs, rt) {
            (Ok(a), Ok(b)) => (a, b),
            _ => return,
        };
        r.push(eq("rho(sigma)^2", g.provenance, &g.rho_sigma_squared, rs.pow(2).map(|m| rows(&m)).map_err(VerifyError::from)));
        r.push(eq("rho(sigma^2) from the curve action equals rho(sigma)^2", Identity, rs.pow(2).ok().map(|m| rows(&m)), self.matrix("sigma^2").map(|m| rows(&m))));
        match z4::group_closure(&[rs.clone(), rt.clone()]) {
            Ok(c) => {
                r.push(Check::equal("order of the image", g.provenance, g.image_order, c.order()));
                r.push(Check::truth("image is dihedral of order 8", g.provenance, c.dihedral8));
                r.push(Check::truth("image is not abelian", g.provenance, !c.abelian));
            }
            Err(e) => r.push(Check::error("order of the image", g.provenance, g.image_order, e)),
        }
        r.push(Check::equal("order of rho(sigma)", Derived, 4, z4::element_order(&rs)));
        r.push(eq("rho(tau sigma tau) = rho(sigma)^3", Identity, rs.pow(3).ok().map(|m| rows(&m)), self.matrix("tau sigma tau").map(|m| rows(&m))));
        // which product order the matrix of a composite actor follows
        match self.matrix("tau sigma") {
            Ok(m) => {
                let left = rt.mul(&rs).expect("6x6");
                let right = rs.mul(&rt).expect("6x6");
                r.push(Check::equal("rho(tau sigma) = rho(tau) rho(sigma)", Identity, rows(&left), rows(&m)));
                if m != left {
                    r.push(Check::equal("rho(tau sigma) = rho(sigma) rho(tau)", Identity, rows(&right), rows(&m)));
                }
            }
            Err(e) => r.push(Check::error("rho(tau sigma) = rho(tau) rho(sigma)", Identity, true, e)),
        }
        self.action_tables(r, &g.cusp_action, &g.p_action);
    }

    fn weil_matrix(&self, r: &mut Report) {
        let g = &self.golden.weil;
        let (w, spots) = match self.weil() {
            Ok(x) => x,
            Err(e) => return r.push(Check::error("pairing matrix", g.provenance, &g.matrix, e)),
        };
        let printed = golden::matrix(&g.matrix);
        r.push(Check::equal("pairing matrix", g.provenance, &g.matrix, rows(&w)));
        r.push(Check::truth("pairing matrix is not the transpose of the printed one", Identity, w == printed || w.transpose() != printed));
        let diag_zero = (0..RANK).all(|i| w.get(i, i) == 0);
        r.push(Check::truth("pairing matrix is alternating", Identity, diag_zero && w.transpose() == w.scale(-1)));
        r.push(eq("pairing matrix has unit determinant", Identity, true, w.det().map(|d| d % 2 == 1).map_err(VerifyError::from)));
        for (i, j, ok) in spots {
            r.push(Check::truth(format!("exact spot check of entry ({}, {})", i + 1, j + 1), Identity, ok));
        }
        for (name, c) in [("sigma", 1u8), ("tau", 3)] {
            r.push(eq(format!("Galois equivariance multiplier for {name}"), Derived, c, self.matrix(name).and_then(|m| Ok(z4::gsp_check(&m, &w)?))));
        }
        r.push(eq("bilinearity on 24 random pairs (F73)", Derived, 24, self.bilinearity(24)));
    }

    /// Pairs of random classes evaluated by the product formula on combined
    /// witnesses, against `u^T W v`.
    fn bilinearity(&self, n: usize) -> Res<usize> {
        let model = self.bench.shadow();
        let w = model.pairing_matrix()?;
        let basis = model.basis_witnesses()?;
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut agree = 0;
        for _ in 0..n {
            let mut draw = || TorsionVector::new(std::array::from_fn(|_| rng.random_range(0..4)));
            let (u, v) = (draw(), draw());
            let wu = combined_witness(basis, model.representative_divisor(&u), &u);
            let wv = combined_witness(basis, model.representative_divisor(&v), &v);
            let direct = pairing::pairing(model.curve(), &wu, &wv)?;
            let mut expected = 0i64;
            for i in 0..RANK {
                for j in 0..RANK {
                    expected += u.coeffs()[i] as i64 * v.coeffs()[j] as i64 * w.get(i, j) as i64;
                }
            }
            agree += usize::from(direct as i64 == expected.rem_euclid(4));
        }
        Ok(agree)
    }

    fn gsp_check(&self, r: &mut Report) {
        let g = &self.golden.symplectic;
        let j = golden::matrix(&g.j);
        let cols: Vec<Vec<u8>> = g.basis.iter().map(|row| row.iter().map(|&x| x.rem_euclid(4) as u8).collect()).collect();
        let e = Z4Matrix::from_columns(&cols).expect("six columns");
        let Some(e_inv) = e.inverse() else {
            return r.push(Check::truth("e'' is a basis", g.provenance, false));
        };
        r.push(eq("pairing in the e'' basis", g.provenance, &g.j, self.weil().and_then(|(w, _)| Ok(rows(&e.transpose().mul(&w)?.mul(&e)?)))));
        let m = g.multipliers.sigma;
        for (name, printed, c) in [("sigma", &g.sigma, m), ("tau", &g.tau, g.multipliers.tau)] {
            let rho = self.matrix(name).and_then(|m| Ok(e_inv.mul(&m)?.mul(&e)?));
            r.push(eq(format!("{name} in the e'' basis"), g.provenance, printed, rho.as_ref().map(rows).map_err(clone_err)));
            r.push(eq(format!("multiplier of {name}"), g.multipliers.provenance, c, rho.and_then(|m| Ok(z4::gsp_check(&m, &j)?))));
        }
    }

    fn automorphisms(&self, r: &mut Report) {
        let g = &self.golden.automorphisms;
        let mut ms = Vec::new();
        for (name, printed) in [("theta1", &g.theta1), ("theta2", &g.theta2), ("theta3", &g.theta3)] {
            let m = self.matrix(name);
            r.push(eq(format!("{name} matrix"), g.provenance, printed, m.as_ref().map(rows).map_err(clone_err)));
            ms.push(m.ok());
        }
        let id = rows(&Z4Matrix::identity(RANK));
        if let [Some(m1), Some(m2), Some(m3)] = &ms[..] {
            r.push(eq("theta2 matrix squared is I", Identity, &id, m2.pow(2).map(|m| rows(&m)).map_err(VerifyError::from)));
            r.push(eq("theta3 matrix cubed is I", Identity, &id, m3.pow(3).map(|m| rows(&m)).map_err(VerifyError::from)));
            let product = m2.mul(m1).and_then(|a| a.mul(m2)).map(|m| rows(&m)).ok();
            r.push(eq("[X : zeta4 Y : Z] matrix is theta2 theta1 theta2", Identity, product, self.matrix("theta2theta1theta2").map(|m| rows(&m))));
        }
        self.action_tables(r, &g.cusp_action, &g.p_action);
        for m in &g.misprints {
            let differs = (|| -> Res<bool> {
                let a = self.actor(&m.actor)?;
                let img = act_on_point(&a, self.bench.exact_curve(), &self.point(&PointSpec::Label(m.point.clone()))?)?;
                Ok(img != self.point(&m.printed)?)
            })();
            r.push(truth(format!("printed {}({}) is not the image (misprint)", m.actor, m.point), Derived, differs));
        }
    }

    fn mordell_weil(&self, r: &mut Report, tag: Option<FieldTag>) {
        let g = &self.golden.mordell_weil;
        let tags: Vec<FieldTag> = tag.map(|t| vec![t]).unwrap_or_else(|| FieldTag::ALL.to_vec());
        let mut groups = BTreeMap::new();
        for t in tags {
            let name = t.as_str();
            let Some(field) = self.golden.mw_field(name) else {
                r.push(Check::error(name, g.provenance, "golden entry", VerifyError::MissingGolden(name.to_string())));
                continue;
            };
            let mats: Res<Vec<Z4Matrix>> = field.generators_of_galois.iter().map(|s| self.matrix(s)).collect();
            let mats = match mats {
                Ok(m) => m,
                Err(e) => {
                    r.push(Check::error(format!("{name}: structure"), g.provenance, field.structure, e));
                    continue;
                }
            };
            match z4::fixed_submodule(&mats) {
                Ok(fixed) => {
                    r.push(Check::equal(format!("{name}: structure"), g.provenance, field.structure, (fixed.a, fixed.b)));
                    let gens: Vec<Vec<u8>> = field.generators.clone();
                    r.push(Check::truth(format!("{name}: generated by {gens:?}"), g.provenance, fixed.spans_same(&gens)));
                    groups.insert(t, fixed);
                }
                Err(e) => r.push(Check::error(format!("{name}: structure"), g.provenance, field.structure, e)),
            }
            if let Some(el) = &field.elimination {
                let p = golden::matrix(&el.p);
                for ((spec, m), printed) in field.generators_of_galois.iter().zip(&mats).zip(&el.products) {
                    let prod = m.sub(&Z4Matrix::identity(RANK)).and_then(|a| a.mul(&p)).map(|x| rows(&x));
                    r.push(eq(format!("{name}: (rho({spec}) - I) P"), g.provenance, printed, prod.map_err(VerifyError::from)));
                }
            }
            for id in &field.identities {
                let holds = (|| -> Res<bool> {
                    let lhs = self.divisor(&id.divisor)?;
                    let rhs = match (&id.class, &id.class_divisor) {
                        (Some(c), _) => self.bench.exact().representative_divisor(&vector(c)),
                        (None, Some(t)) => self.divisor(t)?,
                        (None, None) => return Err(VerifyError::MissingGolden(id.name.clone())),
                    };
                    Ok(self.bench.linearly_equivalent(&lhs, &rhs)?)
                })();
                r.push(truth(format!("{name}: {}", id.name), g.provenance, holds));
            }
        }
        if let (Some(q), Some(top)) = (groups.get(&FieldTag::Q), groups.get(&FieldTag::QZeta8)) {
            for t in [FieldTag::QI, FieldTag::QSqrt2, FieldTag::QSqrtm2] {
                if let Some(mid) = groups.get(&t) {
                    r.push(Check::truth(format!("MW(Q) in MW({}) in MW(Q_zeta8)", t.as_str()), Identity, q.is_submodule_of(mid) && mid.is_submodule_of(top)));
                }
            }
        }
    }

    fn zeta_check(&self, r: &mut Report) {
        let g = &self.golden.zeta;
        let z = match census::zeta_check() {
            Ok(z) => z,
            Err(e) => return r.push(Check::error("point counts", g.counts.provenance, [g.counts.n1, g.counts.n2, g.counts.n3], e)),
        };
        let c = &g.counts;
        r.push(Check::equal("N_1 over F_3", c.provenance, c.n1, z.counts[0]));
        r.push(Check::equal("N_2 over F_9", c.provenance, c.n2, z.counts[1]));
        r.push(Check::equal("N_3 over F_27", c.provenance, c.n3, z.counts[2]));
        let s = &g.power_sums;
        r.push(Check::equal("power sums of the Frobenius eigenvalues", s.provenance, [s.s1, s.s2, s.s3], z.power_sums));
        // every eigenvalue squares to -3 iff L(T) = (1 + 3 T^2)^3
        let cube = poly_pow(&[1, 0, 3], 3);
        r.push(Check::equal("L(T) = (1 + 3T^2)^3", Derived, cube, &z.l_polynomial));
        let j = &g.jacobian_order_f9;
        r.push(Check::equal("Jacobian order over F_9", j.provenance, j.value, z.jacobian_order_f9));
        r.push(Check::equal("order of the torsion model", j.provenance, j.value, TorsionVector::all().count()));
    }

    fn sweep_options(&self) -> SweepOptions<'_> {
        SweepOptions {
            pool: Some(&self.pool),
            f73_cache: self.caches.as_ref().map(|c| &c.f73),
            exact_cache: self.caches.as_ref().map(|c| &c.exact),
            stop_after_checkpoints: None,
        }
    }

    fn effective_count(&self, r: &mut Report) {
        let g = &self.golden.effective_count;
        let mode = self.bench.mode();
        let classes: Vec<_> = CuspCoordinates::all().collect();
        let res = census::effective_class_count(&self.bench, &classes, &self.sweep_options());
        let res = match res {
            Ok(x) => x,
            Err(e) => return r.push(Check::error("effective degree-2 classes", g.exact.provenance, g.exact.value, e)),
        };
        if mode == Mode::F73 {
            let f = &g.f73;
            match f.value {
                Some(v) => r.push(Check::equal("effective degree-2 classes over F73", f.provenance, v, res.count())),
                None => log::warn!("no recorded F73 count; computed {}", res.count()),
            }
            r.push(Check::verdict("F73 count is at least the count over Q(zeta8)", f.provenance, format!(">= {}", f.lower_bound), res.count(), res.count() >= f.lower_bound));
        } else {
            r.push(Check::equal("effective degree-2 classes over Q(zeta8)", g.exact.provenance, g.exact.value, res.count()));
            if let (Some(s), Some(v)) = (res.shadow_effective, g.f73.value) {
                r.push(Check::equal("effective degree-2 classes over F73", g.f73.provenance, v, s));
            }
        }
        let zero = CuspCoordinates::new([0; 5], 0).expect("in range");
        let only_zero = SweepOptions { pool: Some(&self.pool), ..Default::default() };
        r.push(eq("restricted sweep c = 0", g.zero_class.provenance, g.zero_class.value, census::effective_class_count(&self.bench, &[zero], &only_zero).map(|e| e.count()).map_err(VerifyError::from)));
        match census::known_effective_classes(&self.bench) {
            Ok(known) => {
                let eff: std::collections::BTreeSet<_> = res.effective.iter().collect();
                let found = known.iter().filter(|(_, c)| c.as_ref().is_some_and(|c| eff.contains(c))).count();
                let distinct: std::collections::BTreeSet<_> = known.iter().map(|(_, c)| c).collect();
                r.push(Check::equal("classes P + Q - 2B_0 of known pairs found effective", Derived, known.len(), found));
                r.push(Check::equal("known pairs give distinct classes", Derived, known.len(), distinct.len()));
            }
            Err(e) => r.push(Check::error("classes P + Q - 2B_0 of known pairs found effective", Derived, 102, e)),
        }
    }

    fn quadratic_points(&self, r: &mut Report) {
        let g = &self.golden.quadratic_points;
        let q = match census::quadratic_points_census() {
            Ok(q) => q,
            Err(e) => return r.push(Check::error("points on the curve", g.provenance, g.total, e)),
        };
        r.push(Check::equal("points per family", g.provenance, g.counts, q.counts));
        r.push(Check::equal("points in total", g.provenance, g.total, q.total()));
        r.push(Check::equal("records", g.provenance, g.total, q.records.len()));
        r.push(Check::equal("conjugate pairs", g.provenance, g.pairs, q.pairs));
        r.push(Check::equal("non-cusp points fixed by conjugation", g.provenance, 0, q.fixed_by_conjugation));
        r.push(Check::truth("census closed under conjugation", g.provenance, q.closed_under_conjugation));
        r.push(Check::truth("theta3 images of the first sqrt(-7) row match the second row", g.provenance, q.theta3_rows_agree[0]));
        r.push(Check::truth("theta3^2 images of the first sqrt(-7) row match the third row", g.provenance, q.theta3_rows_agree[1]));
        r.push(Check::equal("12 * 13 / 2 + pairs", g.provenance, g.pair_total, q.pair_total));
    }

    fn faddeev_maps(&self, r: &mut Report) {
        let g = &self.golden.faddeev;
        let d = match census::faddeev_maps_check((g.shadow_sample[0], g.shadow_sample[1])) {
            Ok(d) => d,
            Err(e) => return r.push(Check::error("Faddeev maps", g.provenance, true, e)),
        };
        r.push(Check::truth(format!("f_1 images on Y^2 = 1 - X^4 ({} samples)", d.samples), g.provenance, d.f1_on_e1));
        r.push(Check::truth("f_2 images on Y^2 = 1 - X^4", g.provenance, d.f2_on_e1));
        r.push(Check::equal("equation satisfied by f_3 images", g.provenance, &g.e3_form, d.e3_form()));
        r.push(Check::truth(format!("round trips through Y^2 = X^3 + 4X at lambda = 1 ({})", d.round_trips), g.provenance, d.round_trip_ok && d.round_trips > 0));
        r.push(Check::equal("image of the F73 sample", g.provenance, g.shadow_image, d.shadow_image.map(|(u, v)| [u, v])));
        r.push(Check::truth("F73 sample maps back", g.provenance, d.shadow_round_trip));
    }
}

fn clone_err(e: &VerifyError) -> VerifyError {
    VerifyError::MissingGolden(e.to_string())
}

fn poly_pow(p: &[i64], e: u32) -> Vec<i64> {
    let mut acc = vec![1i64];
    for _ in 0..e {
        let mut next = vec![0; acc.len() + p.len() - 1];
        for (i, a) in acc.iter().enumerate() {
            for (j, b) in p.iter().enumerate() {
                next[i + j] += a * b;
            }
        }
        acc = next;
    }
    acc
}

/// Builds matrices from golden rows for callers outside this module.
pub fn golden_matrix(rows: &Rows) -> Z4Matrix {
    golden::matrix(rows)
}
