//! Expected values for the verification commands, read from a versioned JSON
//! file. The built-in copy is `data/golden.json`.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;
use thiserror::Error;

use crate::curve::{CurveError, PlaneCurve, Point, StandardPoints};
use crate::field::standard::{FOURTH_ROOT_2, ZETA8};
use crate::field::Field;
use crate::report::Provenance;
use crate::rr::Divisor;
use crate::z4::Z4Matrix;

pub const FORMAT_VERSION: u32 = 1;

const BUILTIN: &str = include_str!("../data/golden.json");

#[derive(Debug, Error)]
pub enum GoldenError {
    #[error("cannot read golden file: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed golden file: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("golden file has version {0}, expected {FORMAT_VERSION}")]
    Version(u32),
}

/// A matrix as nested rows.
pub type Rows = Vec<Vec<i64>>;

pub fn matrix(rows: &Rows) -> Z4Matrix {
    Z4Matrix::from_rows(rows).expect("rectangular golden matrix")
}

/// A point given by a standard label (`A0`, `P3`, ...) or by coordinates
/// `[sign, k, m]` standing for `sign * 2^(k/4) * zeta8^m`.
#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum PointSpec {
    Label(String),
    Coords([[i64; 3]; 3]),
}

pub type Terms = Vec<(PointSpec, i64)>;

#[derive(Clone, Debug, Deserialize)]
pub struct Tagged<T> {
    pub provenance: Provenance,
    pub value: T,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Golden {
    pub version: u32,
    pub rohrlich: Rohrlich,
    pub key_identity: KeyIdentity,
    pub basis: Basis,
    pub galois: Galois,
    pub weil: Weil,
    pub symplectic: Symplectic,
    pub automorphisms: Automorphisms,
    pub mordell_weil: MordellWeil,
    pub zeta: Zeta,
    pub effective_count: EffectiveCount,
    pub quadratic_points: QuadraticPoints,
    pub faddeev: Faddeev,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Relation {
    pub name: String,
    pub terms: Terms,
}

#[derive(Clone, Debug, Deserialize)]
pub struct TableRow {
    pub name: String,
    pub point: String,
    /// `(c_1, ..., c_5, c_6)` in the cusp basis.
    pub cusp: [u8; 6],
}

#[derive(Clone, Debug, Deserialize)]
pub struct Rohrlich {
    pub provenance: Provenance,
    pub relations: Vec<Relation>,
    pub four_term_beta: Relation,
    pub table: Vec<TableRow>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct KeyIdentity {
    pub provenance: Provenance,
    pub divisor: Terms,
    pub class_of_twice_e6_prime: [u8; 6],
}

#[derive(Clone, Debug, Deserialize)]
pub struct Basis {
    pub e6_torsion: Tagged<[u8; 6]>,
    pub twice_e6_prime: Tagged<[u8; 6]>,
    pub cusp_classes: Tagged<usize>,
    pub matches_of_e6_prime: Tagged<usize>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Galois {
    pub provenance: Provenance,
    pub rho_sigma: Rows,
    pub rho_tau: Rows,
    pub rho_sigma_squared: Rows,
    pub image_order: usize,
    pub cusp_action: BTreeMap<String, Vec<String>>,
    pub p_action: BTreeMap<String, Vec<PointSpec>>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Weil {
    pub provenance: Provenance,
    pub matrix: Rows,
    pub spot_entries: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Multipliers {
    pub provenance: Provenance,
    pub sigma: u8,
    pub tau: u8,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Symplectic {
    pub provenance: Provenance,
    pub j: Rows,
    /// `e''_k` in `e`-coordinates, one per row.
    pub basis: Rows,
    pub sigma: Rows,
    pub tau: Rows,
    pub multipliers: Multipliers,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Automorphisms {
    pub provenance: Provenance,
    pub theta1: Rows,
    pub theta2: Rows,
    pub theta3: Rows,
    pub cusp_action: BTreeMap<String, Vec<String>>,
    pub p_action: BTreeMap<String, Vec<PointSpec>>,
    /// Printed images that disagree with the action; the tables above hold
    /// the recomputed point instead.
    #[serde(default)]
    pub misprints: Vec<Misprint>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Misprint {
    pub actor: String,
    pub point: String,
    pub printed: PointSpec,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Elimination {
    pub p: Rows,
    pub products: Vec<Rows>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Identity {
    pub name: String,
    #[serde(default)]
    pub class: Option<[u8; 6]>,
    #[serde(default)]
    pub class_divisor: Option<Terms>,
    pub divisor: Terms,
}

#[derive(Clone, Debug, Deserialize)]
pub struct MwField {
    pub tag: String,
    pub generators_of_galois: Vec<String>,
    #[serde(rename = "type")]
    pub structure: (u32, u32),
    pub generators: Vec<Vec<u8>>,
    pub elimination: Option<Elimination>,
    pub identities: Vec<Identity>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct MordellWeil {
    pub provenance: Provenance,
    pub fields: Vec<MwField>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Counts {
    pub provenance: Provenance,
    pub n1: usize,
    pub n2: usize,
    pub n3: usize,
}

#[derive(Clone, Debug, Deserialize)]
pub struct PowerSums {
    pub provenance: Provenance,
    pub s1: i64,
    pub s2: i64,
    pub s3: i64,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Zeta {
    pub counts: Counts,
    pub power_sums: PowerSums,
    pub jacobian_order_f9: Tagged<u64>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Recorded {
    pub provenance: Provenance,
    pub value: Option<usize>,
    pub lower_bound: usize,
}

#[derive(Clone, Debug, Deserialize)]
pub struct EffectiveCount {
    pub exact: Tagged<usize>,
    pub f73: Recorded,
    pub zero_class: Tagged<usize>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct QuadraticPoints {
    pub provenance: Provenance,
    pub counts: [usize; 4],
    pub total: usize,
    pub pairs: usize,
    pub pair_total: usize,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Faddeev {
    pub provenance: Provenance,
    pub e3_form: String,
    pub shadow_sample: [u64; 2],
    pub shadow_image: [u64; 2],
}

impl Golden {
    pub fn builtin() -> Self {
        Self::parse(BUILTIN).expect("built-in golden data is valid")
    }

    pub fn parse(s: &str) -> Result<Self, GoldenError> {
        let g: Golden = serde_json::from_str(s)?;
        if g.version != FORMAT_VERSION {
            return Err(GoldenError::Version(g.version));
        }
        Ok(g)
    }

    pub fn load(path: &Path) -> Result<Self, GoldenError> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn mw_field(&self, tag: &str) -> Option<&MwField> {
        self.mordell_weil.fields.iter().find(|f| f.tag == tag)
    }
}

/// `sign * 2^(k/4) * zeta8^m`.
pub fn coordinate<F: Field>(f: &F, [sign, k, m]: [i64; 3]) -> Result<F::Elem, CurveError> {
    let a = f.require(FOURTH_ROOT_2)?;
    let z = f.require(ZETA8)?;
    let v = f.mul(&f.pow(&a, k)?, &f.pow(&z, m)?);
    Ok(f.mul(&f.from_i64(sign), &v))
}

pub fn resolve_point<F: Field>(curve: &PlaneCurve<F>, sp: &StandardPoints<F::Elem>, spec: &PointSpec) -> Result<Point<F::Elem>, CurveError> {
    match spec {
        PointSpec::Label(l) => sp.get(l).ok_or_else(|| CurveError::Decode(format!("unknown point label {l}"))),
        PointSpec::Coords(c) => {
            let f = curve.field();
            curve.point([coordinate(f, c[0])?, coordinate(f, c[1])?, coordinate(f, c[2])?])
        }
    }
}

pub fn resolve_divisor<F: Field>(curve: &PlaneCurve<F>, sp: &StandardPoints<F::Elem>, terms: &Terms) -> Result<Divisor<F::Elem>, CurveError> {
    let mut d = Divisor::zero();
    for (spec, k) in terms {
        d.add_at(&resolve_point(curve, sp, spec)?, *k);
    }
    Ok(d)
}
