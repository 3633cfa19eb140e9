//! Galois and automorphism actions on `Jac[4]`, computed from the action on
//! points followed by decomposition in the torsion basis.

use std::fmt;
use std::str::FromStr;

use crate::curve::{CurveError, Form, PlaneCurve, Point};
use crate::field::standard::{self, ZETA4, ZETA8};
use crate::field::{Field, FieldAutomorphism, NfElem, NumberField, PrimeField, Reduction};
use crate::linalg;
use crate::rr::{Divisor, Registry, RegistryEntry};
use crate::torsion::{TorsionError, TorsionModel, TorsionVector, RANK};
use crate::z4::Z4Matrix;

/// Which field the class computations run in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Everything in the shadow field `F_73`.
    F73,
    /// Everything in `Q(delta)`.
    Exact,
    /// Proposals in `F_73`, each confirmed once in `Q(delta)`.
    TwoPhase,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::F73 => "f73",
            Mode::Exact => "exact",
            Mode::TwoPhase => "two_phase",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "f73" => Ok(Mode::F73),
            "exact" => Ok(Mode::Exact),
            "two_phase" | "two-phase" => Ok(Mode::TwoPhase),
            _ => Err(format!("unknown mode `{s}` (expected f73, exact or two_phase)")),
        }
    }
}

type M3 = [[NfElem; 3]; 3];

#[derive(Clone)]
enum ActorKind {
    Field(FieldAutomorphism<NumberField>),
    /// `v -> M v` on coordinate vectors
    Curve(M3),
}

/// A field automorphism of `Q(delta)` or a linear automorphism of the
/// curve, acting on points with coordinates in `Q(delta)`.
#[derive(Clone)]
pub struct GaloisActor {
    label: String,
    kind: ActorKind,
}

impl fmt::Debug for GaloisActor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label)
    }
}

impl GaloisActor {
    pub fn field(aut: FieldAutomorphism<NumberField>) -> Self {
        Self { label: aut.label().to_string(), kind: ActorKind::Field(aut) }
    }

    pub fn curve(label: &str, m: M3) -> Self {
        Self { label: label.to_string(), kind: ActorKind::Curve(m) }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn is_field_automorphism(&self) -> bool {
        matches!(self.kind, ActorKind::Field(_))
    }

    /// `self ∘ other` (apply `other` first); both must be of the same kind.
    pub fn compose(&self, other: &Self, k: &NumberField) -> Option<Self> {
        let label = format!("{}{}", self.label, other.label);
        match (&self.kind, &other.kind) {
            (ActorKind::Field(a), ActorKind::Field(b)) => Some(Self { label, kind: ActorKind::Field(a.compose(b)) }),
            (ActorKind::Curve(a), ActorKind::Curve(b)) => Some(Self { label, kind: ActorKind::Curve(mat_mul(k, a, b)) }),
            _ => None,
        }
    }

    pub fn relabel(mut self, label: &str) -> Self {
        self.label = label.to_string();
        self
    }

    fn map_coords(&self, k: &NumberField, c: &[NfElem; 3]) -> Result<[NfElem; 3], CurveError> {
        match &self.kind {
            ActorKind::Field(a) => Ok([a.apply(&c[0])?, a.apply(&c[1])?, a.apply(&c[2])?]),
            ActorKind::Curve(m) => Ok(std::array::from_fn(|i| {
                (0..3).fold(k.zero(), |acc, j| k.add(&acc, &k.mul(&m[i][j], &c[j])))
            })),
        }
    }

    /// A form vanishing exactly on the image of the zero set of `g`.
    fn map_form(&self, k: &NumberField, g: &Form<NfElem>) -> Result<Form<NfElem>, CurveError> {
        match &self.kind {
            ActorKind::Field(a) => Ok(g.map_coeffs(k, |c| a.apply(c))?),
            ActorKind::Curve(m) => Ok(g.linear_substitute(k, &mat_inv(k, m))),
        }
    }
}

fn mat_mul(k: &NumberField, a: &M3, b: &M3) -> M3 {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..3).fold(k.zero(), |acc, t| k.add(&acc, &k.mul(&a[i][t], &b[t][j])))))
}

fn mat_inv(k: &NumberField, m: &M3) -> M3 {
    let rows: Vec<Vec<NfElem>> = m.iter().map(|r| r.to_vec()).collect();
    let cols: Vec<Vec<NfElem>> = (0..3)
        .map(|j| {
            let e: Vec<NfElem> = (0..3).map(|i| if i == j { k.one() } else { k.zero() }).collect();
            linalg::solve(k, &rows, &e).expect("automorphism matrix is invertible")
        })
        .collect();
    std::array::from_fn(|i| std::array::from_fn(|j| cols[j][i].clone()))
}

/// Image of a point under an actor.
pub fn act_on_point(actor: &GaloisActor, curve: &PlaneCurve<NumberField>, p: &Point<NfElem>) -> Result<Point<NfElem>, CurveError> {
    curve.point(actor.map_coords(curve.field(), p.coords())?)
}

pub fn act_on_divisor(actor: &GaloisActor, curve: &PlaneCurve<NumberField>, d: &Divisor<NfElem>) -> Result<Divisor<NfElem>, CurveError> {
    d.map_points(|p| act_on_point(actor, curve, p))
}

/// Adds the image of every current registry entry under `actor`.
pub fn extend_registry(actor: &GaloisActor, registry: &Registry<NumberField>) -> Result<(), CurveError> {
    let curve = registry.curve();
    let k = curve.field();
    for e in registry.entries() {
        let form = actor.map_form(k, &e.form)?;
        let divisor = act_on_divisor(actor, curve, &e.divisor)?;
        registry.push(RegistryEntry::new(format!("{}({})", actor.label, e.label), form, divisor));
    }
    Ok(())
}

pub fn reduce_point(red: &Reduction, curve: &PlaneCurve<PrimeField>, p: &Point<NfElem>) -> Result<Point<u64>, CurveError> {
    let c = p.coords();
    curve.point([red.apply(&c[0])?, red.apply(&c[1])?, red.apply(&c[2])?])
}

/// Reduction of a divisor modulo the shadow prime; distinct points must
/// stay distinct.
pub fn reduce_divisor(red: &Reduction, curve: &PlaneCurve<PrimeField>, d: &Divisor<NfElem>) -> Result<Divisor<u64>, CurveError> {
    let r = d.map_points(|p| reduce_point(red, curve, p))?;
    if r.support().count() != d.support().count() {
        return Err(CurveError::NotOnCurve(format!("points of {d:?} collide modulo {}", red.target().modulus())));
    }
    Ok(r)
}

/// The two torsion models and the reduction between them. The exact model
/// is only used in `exact` and `two_phase` modes.
#[derive(Clone)]
pub struct Workbench {
    mode: Mode,
    exact: TorsionModel<NumberField>,
    shadow: TorsionModel<PrimeField>,
    reduction: Reduction,
}

impl Workbench {
    pub fn new(mode: Mode) -> Result<Self, TorsionError> {
        let k = standard::q_delta();
        let f = standard::shadow_f73();
        let reduction = Reduction::matching(&k, &f, &[(ZETA8, standard::SHADOW_ZETA8), (standard::FOURTH_ROOT_2, standard::SHADOW_FOURTH_ROOT_2)])
            .map_err(CurveError::from)?;
        Ok(Self { mode, exact: TorsionModel::fermat(&k)?, shadow: TorsionModel::fermat(&f)?, reduction })
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn exact(&self) -> &TorsionModel<NumberField> {
        &self.exact
    }

    pub fn shadow(&self) -> &TorsionModel<PrimeField> {
        &self.shadow
    }

    pub fn reduction(&self) -> &Reduction {
        &self.reduction
    }

    pub fn exact_curve(&self) -> &PlaneCurve<NumberField> {
        self.exact.curve()
    }

    pub fn field(&self) -> &NumberField {
        self.exact.field()
    }

    pub fn reduce(&self, d: &Divisor<NfElem>) -> Result<Divisor<u64>, TorsionError> {
        Ok(reduce_divisor(&self.reduction, self.shadow.curve(), d)?)
    }

    /// Makes the exact registry cover the support of `d`, adding images of
    /// its entries under `[X : Y : Z] -> [zeta4^i X : zeta4^j Y : Z]` when
    /// needed. Points outside those orbits stay uncovered.
    pub fn cover(&self, d: &Divisor<NfElem>) -> Result<(), TorsionError> {
        let reg = self.exact.registry();
        let covered = || d.support().all(|p| !reg.covering(p).is_empty());
        if self.mode == Mode::F73 || covered() {
            return Ok(());
        }
        let k = self.field();
        for actor in [theta1(k), theta2_theta1_theta2(k)] {
            for _ in 0..3 {
                extend_registry(&actor, reg)?;
                if covered() {
                    return Ok(());
                }
            }
        }
        Ok(())
    }

    /// Coordinates of the class of an exact divisor, by the configured mode.
    pub fn decompose(&self, d: &Divisor<NfElem>) -> Result<TorsionVector, TorsionError> {
        self.cover(d)?;
        match self.mode {
            Mode::F73 => self.shadow.decompose(&self.reduce(d)?),
            Mode::Exact => self.exact.decompose(d),
            Mode::TwoPhase => {
                let v = self.shadow.decompose(&self.reduce(d)?)?;
                if self.exact.represents(d, &v)? {
                    Ok(v)
                } else {
                    Err(TorsionError::ConfirmationFailed(format!("{v:?} for {d:?}")))
                }
            }
        }
    }

    /// `[D] = [D']` for exact divisors, by the configured mode.
    pub fn linearly_equivalent(&self, a: &Divisor<NfElem>, b: &Divisor<NfElem>) -> Result<bool, TorsionError> {
        self.cover(&a.sub(b))?;
        match self.mode {
            Mode::F73 => self.shadow.linearly_equivalent(&self.reduce(a)?, &self.reduce(b)?),
            Mode::Exact | Mode::TwoPhase => self.exact.linearly_equivalent(a, b),
        }
    }

    /// Lets the exact registry cover images of its entries under `actor`.
    pub fn prepare(&self, actor: &GaloisActor) -> Result<(), TorsionError> {
        if self.mode != Mode::F73 {
            extend_registry(actor, self.exact.registry())?;
        }
        Ok(())
    }

    /// Column `i` is the decomposition of the image of the `i`-th basis
    /// divisor.
    pub fn action_matrix(&self, actor: &GaloisActor) -> Result<Z4Matrix, TorsionError> {
        self.prepare(actor)?;
        let mut cols = Vec::new();
        for i in 0..RANK {
            let img = act_on_divisor(actor, self.exact_curve(), self.exact.basis_divisor(i))?;
            cols.push(self.decompose(&img)?.to_vec());
        }
        Ok(Z4Matrix::from_columns(&cols).expect("six columns"))
    }

    /// The Weil pairing matrix in the configured mode; `two_phase` computes
    /// it in `F_73` and recomputes `spot` entries exactly.
    pub fn pairing_matrix(&self, spot: &[(usize, usize)]) -> Result<(Z4Matrix, Vec<(usize, usize, bool)>), TorsionError> {
        match self.mode {
            Mode::F73 => Ok((self.shadow.pairing_matrix()?.clone(), Vec::new())),
            Mode::Exact => Ok((self.exact.pairing_matrix()?.clone(), Vec::new())),
            Mode::TwoPhase => {
                let m = self.shadow.pairing_matrix()?.clone();
                let w = self.exact.basis_witnesses()?;
                let mut checks = Vec::new();
                for &(i, j) in spot {
                    let v = crate::pairing::pairing(self.exact_curve(), &w[i], &w[j])?;
                    checks.push((i, j, v == m.get(i, j)));
                }
                Ok((m, checks))
            }
        }
    }
}

pub fn sigma(k: &NumberField) -> GaloisActor {
    GaloisActor::field(standard::sigma(k))
}

pub fn tau(k: &NumberField) -> GaloisActor {
    GaloisActor::field(standard::tau(k))
}

pub fn identity(k: &NumberField) -> GaloisActor {
    GaloisActor::field(FieldAutomorphism::identity(k))
}

fn diag(k: &NumberField, d: [NfElem; 3]) -> M3 {
    let [a, b, c] = d;
    [[a, k.zero(), k.zero()], [k.zero(), b, k.zero()], [k.zero(), k.zero(), c]]
}

/// `[X : Y : Z] -> [zeta4 X : Y : Z]`.
pub fn theta1(k: &NumberField) -> GaloisActor {
    GaloisActor::curve("theta1", diag(k, [k.named(ZETA4).unwrap(), k.one(), k.one()]))
}

/// `[X : Y : Z] -> [Y : X : Z]`.
pub fn theta2(k: &NumberField) -> GaloisActor {
    let (o, z) = (k.one(), k.zero());
    GaloisActor::curve("theta2", [[z.clone(), o.clone(), z.clone()], [o.clone(), z.clone(), z.clone()], [z.clone(), z, o]])
}

/// `[X : Y : Z] -> [zeta8^7 Y : zeta4^3 Z : X]`.
pub fn theta3(k: &NumberField) -> GaloisActor {
    let (o, z) = (k.one(), k.zero());
    let z8_7 = k.pow_u(&k.named(ZETA8).unwrap(), 7);
    let z4_3 = k.pow_u(&k.named(ZETA4).unwrap(), 3);
    GaloisActor::curve("theta3", [[z.clone(), z8_7, z.clone()], [z.clone(), z.clone(), z4_3], [o, z.clone(), z]])
}

/// `[X : Y : Z] -> [X : zeta4 Y : Z]`, which equals `theta2 theta1 theta2`.
pub fn theta2_theta1_theta2(k: &NumberField) -> GaloisActor {
    GaloisActor::curve("theta2theta1theta2", diag(k, [k.one(), k.named(ZETA4).unwrap(), k.one()]))
}
