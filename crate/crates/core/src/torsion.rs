//! The 4-torsion of the Jacobian in the basis `e_1, ..., e_5, e'_6`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use parking_lot::RwLock;
use serde::Serialize;
use thiserror::Error;

use crate::curve::{CurveError, PlaneCurve, Point, StandardPoints};
use crate::field::Field;
use crate::pairing::{self, PairingError, TorsionWitness};
use crate::rr::{Divisor, Registry, RiemannRoch, RrError};
use crate::z4::{self, Z4Matrix};

pub const RANK: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TorsionError {
    #[error("no torsion vector matches {0}")]
    NotFound(String),
    #[error("coordinates out of range: {0}")]
    InvalidCoordinates(String),
    #[error("exact confirmation rejected the shadow proposal {0}")]
    ConfirmationFailed(String),
    #[error(transparent)]
    Rr(#[from] RrError),
    #[error(transparent)]
    Pairing(#[from] PairingError),
}

impl From<CurveError> for TorsionError {
    fn from(e: CurveError) -> Self {
        TorsionError::Rr(e.into())
    }
}

/// Coordinates `(c_1, ..., c_5, c'_6)` in `(Z/4)^6`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct TorsionVector(pub [u8; RANK]);

impl fmt::Debug for TorsionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","))
    }
}

impl TorsionVector {
    pub fn new(c: [i64; RANK]) -> Self {
        Self(c.map(|x| x.rem_euclid(4) as u8))
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(i: usize) -> Self {
        let mut v = Self::zero();
        v.0[i] = 1;
        v
    }

    pub fn coeffs(&self) -> &[u8; RANK] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0 == [0; RANK]
    }

    pub fn add(&self, o: &Self) -> Self {
        Self(std::array::from_fn(|i| (self.0[i] + o.0[i]) % 4))
    }

    pub fn neg(&self) -> Self {
        Self(self.0.map(|x| (4 - x) % 4))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: i64) -> Self {
        let k = k.rem_euclid(4) as u8;
        Self(self.0.map(|x| (x * k) % 4))
    }

    /// Position in the lexicographic order, `c_1` most significant.
    pub fn index(&self) -> usize {
        self.0.iter().fold(0, |acc, &c| acc * 4 + c as usize)
    }

    pub fn from_index(mut i: usize) -> Self {
        let mut c = [0u8; RANK];
        for k in (0..RANK).rev() {
            c[k] = (i % 4) as u8;
            i /= 4;
        }
        Self(c)
    }

    /// All `4^6` vectors in lexicographic order.
    pub fn all() -> impl Iterator<Item = Self> {
        (0..4usize.pow(RANK as u32)).map(Self::from_index)
    }

    /// Six base-4 digits, e.g. `"120300"`.
    pub fn digits(&self) -> String {
        self.0.iter().map(|c| char::from(b'0' + c)).collect()
    }

    pub fn from_digits(s: &str) -> Option<Self> {
        let b = s.as_bytes();
        if b.len() != RANK || !b.iter().all(|c| (b'0'..=b'3').contains(c)) {
            return None;
        }
        Some(Self(std::array::from_fn(|i| b[i] - b'0')))
    }

    pub fn to_vec(&self) -> Vec<u8> {
        self.0.to_vec()
    }

    pub fn from_slice(v: &[u8]) -> Self {
        Self(std::array::from_fn(|i| v[i] % 4))
    }
}

/// Coordinates `(c_1, ..., c_5; c_6)` of the cusp subgroup with respect to
/// `e_1, ..., e_5, e_6`, with `c_6` in `Z/2`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct CuspCoordinates {
    c: [u8; 5],
    c6: u8,
}

impl CuspCoordinates {
    pub fn new(c: [u8; 5], c6: u8) -> Result<Self, TorsionError> {
        if c.iter().any(|&x| x > 3) || c6 > 1 {
            return Err(TorsionError::InvalidCoordinates(format!("{c:?}; {c6}")));
        }
        Ok(Self { c, c6 })
    }

    /// Reduces arbitrary integers into range.
    pub fn reduced(c: [i64; 5], c6: i64) -> Self {
        Self { c: c.map(|x| x.rem_euclid(4) as u8), c6: c6.rem_euclid(2) as u8 }
    }

    pub fn c(&self) -> &[u8; 5] {
        &self.c
    }

    pub fn c6(&self) -> u8 {
        self.c6
    }

    /// The 2048 values in lexicographic order.
    pub fn all() -> impl Iterator<Item = Self> {
        (0..2048usize).map(|i| {
            let c6 = (i % 2) as u8;
            let mut r = i / 2;
            let mut c = [0u8; 5];
            for k in (0..5).rev() {
                c[k] = (r % 4) as u8;
                r /= 4;
            }
            Self { c, c6 }
        })
    }

    /// Position in the order of [`CuspCoordinates::all`].
    pub fn index(&self) -> usize {
        let r = self.c.iter().fold(0usize, |acc, &x| acc * 4 + x as usize);
        r * 2 + self.c6 as usize
    }

    pub fn to_torsion(&self) -> TorsionVector {
        convert_cusp_coords(self)
    }

    /// Inverse of [`convert_cusp_coords`]; `None` outside the cusp subgroup.
    pub fn from_torsion(v: &TorsionVector) -> Option<Self> {
        let [c1, c2, c3, c4, c5, c6] = v.0.map(|x| x as i64);
        if c6 % 2 != 0 {
            return None;
        }
        let h = c6 / 2;
        Some(Self::reduced([c1, c2 - 2 * h, c3, c4 - 2 * h, c5], h))
    }
}

/// `e_6 = 2 e'_6 - 2 e_2 - 2 e_4`.
pub fn convert_cusp_coords(c: &CuspCoordinates) -> TorsionVector {
    let [c1, c2, c3, c4, c5] = c.c.map(|x| x as i64);
    let c6 = c.c6 as i64;
    TorsionVector::new([c1, c2 + 2 * c6, c3, c4 + 2 * c6, c5, 2 * c6])
}

/// How `decompose` finds its answer; every strategy confirms by a
/// Riemann-Roch principality test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Weil pairings against the basis determine the candidate.
    Pairing,
    /// Lexicographic scan over all `4^6` candidates.
    Sweep,
}

/// Divisor class computations on the quartic over one field.
#[derive(Clone)]
pub struct TorsionModel<F: Field> {
    rr: RiemannRoch<F>,
    points: StandardPoints<F::Elem>,
    basis: [Divisor<F::Elem>; RANK],
    witnesses: Arc<OnceLock<Vec<TorsionWitness<F::Elem>>>>,
    pairing: Arc<OnceLock<Z4Matrix>>,
    memo: Arc<RwLock<HashMap<Divisor<F::Elem>, TorsionVector>>>,
}

impl<F: Field> TorsionModel<F> {
    pub fn new(registry: &Registry<F>) -> Result<Self, TorsionError> {
        let curve = registry.curve();
        let points = curve.standard_points()?;
        let b0 = points.b[0].clone();
        let diff = |p: &Point<F::Elem>| Divisor::from_pairs([(p.clone(), 1), (b0.clone(), -1)]);
        let ps = points.p()?;
        let mut e6 = Divisor::from_pairs(ps.iter().map(|p| (p.clone(), 1)));
        e6.add_at(&b0, -3);
        let basis = [diff(&points.a[1]), diff(&points.a[2]), diff(&points.b[1]), diff(&points.b[2]), diff(&points.c[1]), e6];
        Ok(Self {
            rr: RiemannRoch::new(registry),
            points,
            basis,
            witnesses: Arc::default(),
            pairing: Arc::default(),
            memo: Arc::default(),
        })
    }

    /// Model over the seeded registry of the Fermat quartic.
    pub fn fermat(field: &F) -> Result<Self, TorsionError> {
        Self::new(&Registry::seed(&PlaneCurve::fermat(field))?)
    }

    pub fn rr(&self) -> &RiemannRoch<F> {
        &self.rr
    }

    pub fn curve(&self) -> &PlaneCurve<F> {
        self.rr.curve()
    }

    pub fn field(&self) -> &F {
        self.curve().field()
    }

    pub fn registry(&self) -> &Registry<F> {
        self.rr.registry()
    }

    pub fn points(&self) -> &StandardPoints<F::Elem> {
        &self.points
    }

    pub fn b0(&self) -> &Point<F::Elem> {
        &self.points.b[0]
    }

    /// `[Q - B_0]` as a divisor.
    pub fn point_class(&self, q: &Point<F::Elem>) -> Divisor<F::Elem> {
        Divisor::from_pairs([(q.clone(), 1), (self.b0().clone(), -1)])
    }

    pub fn basis_divisor(&self, i: usize) -> &Divisor<F::Elem> {
        &self.basis[i]
    }

    /// `sum c_i (Z_i - B_0) + c'_6 (P_1 + P_2 + P_3 - 3 B_0)`.
    pub fn representative_divisor(&self, v: &TorsionVector) -> Divisor<F::Elem> {
        let mut d = Divisor::zero();
        for (i, &c) in v.0.iter().enumerate() {
            if c != 0 {
                d = d.add(&self.basis[i].scale(c as i64));
            }
        }
        d
    }

    /// Divisor of the class `sum c_i e_i + c_6 e_6` written on the cusps.
    pub fn cusp_divisor(&self, c: &CuspCoordinates) -> Divisor<F::Elem> {
        let p = &self.points;
        let mut d = Divisor::zero();
        let zs = [&p.a[1], &p.a[2], &p.b[1], &p.b[2], &p.c[1]];
        for (z, &k) in zs.iter().zip(c.c()) {
            d = d.add(&self.point_class(z).scale(k as i64));
        }
        if c.c6() == 1 {
            for z in [&p.a[1], &p.a[2], &p.b[1], &p.b[2], &p.c[1], &p.c[2]] {
                d = d.add(&self.point_class(z));
            }
        }
        d
    }

    pub fn is_principal(&self, d: &Divisor<F::Elem>) -> Result<bool, TorsionError> {
        Ok(self.rr.is_principal(d)?)
    }

    pub fn linearly_equivalent(&self, a: &Divisor<F::Elem>, b: &Divisor<F::Elem>) -> Result<bool, TorsionError> {
        Ok(self.rr.linearly_equivalent(a, b)?)
    }

    /// `[D] = [representative_divisor(v)]`.
    pub fn represents(&self, d: &Divisor<F::Elem>, v: &TorsionVector) -> Result<bool, TorsionError> {
        self.linearly_equivalent(d, &self.representative_divisor(v))
    }

    pub fn basis_witnesses(&self) -> Result<&[TorsionWitness<F::Elem>], TorsionError> {
        if let Some(w) = self.witnesses.get() {
            return Ok(w);
        }
        let w = pairing::basis_witnesses(self.curve())?;
        Ok(self.witnesses.get_or_init(|| w))
    }

    /// The Weil pairing matrix on the basis.
    pub fn pairing_matrix(&self) -> Result<&Z4Matrix, TorsionError> {
        if let Some(m) = self.pairing.get() {
            return Ok(m);
        }
        let m = pairing::pairing_matrix(self.curve(), self.basis_witnesses()?)?;
        Ok(self.pairing.get_or_init(|| m))
    }

    /// A function with divisor `4 D`, if `[D]` is 4-torsion.
    pub fn witness(&self, d: &Divisor<F::Elem>) -> Result<Option<TorsionWitness<F::Elem>>, TorsionError> {
        let Some((g, den)) = self.rr.principal_function(&d.scale(-4))? else {
            return Ok(None);
        };
        let mut factors = vec![(g, 1)];
        factors.extend(den.into_iter().map(|h| (h, -1)));
        Ok(Some(TorsionWitness::new(d.clone(), factors)))
    }

    /// `(<[D], e_j>)_j`.
    pub fn pairings_with_basis(&self, w: &TorsionWitness<F::Elem>) -> Result<Vec<u8>, TorsionError> {
        self.basis_witnesses()?.iter().map(|b| Ok(pairing::pairing(self.curve(), w, b)?)).collect()
    }

    /// Candidate coordinates of `[D]` read off from its pairings, unconfirmed.
    pub fn propose(&self, d: &Divisor<F::Elem>) -> Result<Option<TorsionVector>, TorsionError> {
        let Some(w) = self.witness(d)? else {
            return Ok(None);
        };
        let p = self.pairings_with_basis(&w)?;
        // <D, e_j> = sum_i v_i W_ij
        let wt = self.pairing_matrix()?.transpose();
        Ok(z4::solve(&wt, &p).ok().map(|v| TorsionVector::from_slice(&v)))
    }

    pub fn decompose(&self, d: &Divisor<F::Elem>) -> Result<TorsionVector, TorsionError> {
        self.decompose_with(d, Strategy::Pairing)
    }

    pub fn decompose_with(&self, d: &Divisor<F::Elem>, strategy: Strategy) -> Result<TorsionVector, TorsionError> {
        if let Some(v) = self.memo.read().get(d) {
            return Ok(*v);
        }
        let v = match strategy {
            Strategy::Pairing => match self.propose(d)? {
                Some(v) if self.represents(d, &v)? => v,
                _ => self.sweep(d)?,
            },
            Strategy::Sweep => self.sweep(d)?,
        };
        self.memo.write().insert(d.clone(), v);
        Ok(v)
    }

    fn sweep(&self, d: &Divisor<F::Elem>) -> Result<TorsionVector, TorsionError> {
        for v in TorsionVector::all() {
            if self.represents(d, &v)? {
                return Ok(v);
            }
        }
        Err(TorsionError::NotFound(format!("{d:?}")))
    }

    pub fn memo_len(&self) -> usize {
        self.memo.read().len()
    }

    pub fn memo_entries(&self) -> Vec<(Divisor<F::Elem>, TorsionVector)> {
        self.memo.read().iter().map(|(d, v)| (d.clone(), *v)).collect()
    }

    /// Seeds the decomposition memo, e.g. from a cache.
    pub fn remember(&self, d: Divisor<F::Elem>, v: TorsionVector) {
        self.memo.write().insert(d, v);
    }
}
