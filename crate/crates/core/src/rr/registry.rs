use std::collections::HashMap;
use std::sync::Arc;

use parking_lot::RwLock;

use super::divisor::Divisor;
use super::RrError;
use crate::curve::series::eval_form;
use crate::curve::{CurveError, Form, PlaneCurve, Point};
use crate::explicit;
use crate::field::standard::{DELTA, FOURTH_ROOT_2, ZETA4, ZETA8};
use crate::field::{Field, UniPoly};
use crate::linalg;

/// A form together with its complete (effective) divisor on the curve.
#[derive(Clone, Debug)]
pub struct RegistryEntry<F: Field> {
    pub label: String,
    pub form: Form<F::Elem>,
    pub divisor: Divisor<F::Elem>,
}

impl<F: Field> RegistryEntry<F> {
    pub fn new(label: impl Into<String>, form: Form<F::Elem>, divisor: Divisor<F::Elem>) -> Self {
        Self { label: label.into(), form, divisor }
    }

    pub fn degree(&self) -> u32 {
        self.form.degree()
    }
}

/// True iff `claimed` is effective of degree `4 deg(form)` and `form`
/// vanishes to exactly the claimed order at every point of its support.
/// The degree count rules out zeros elsewhere.
pub fn verify_form_divisor<F: Field>(curve: &PlaneCurve<F>, form: &Form<F::Elem>, claimed: &Divisor<F::Elem>) -> Result<bool, CurveError> {
    if !claimed.is_effective() || claimed.degree() != 4 * form.degree() as i64 {
        return Ok(false);
    }
    for (p, w) in claimed.iter() {
        if !curve.contains(p.coords())? || curve.ord_at(p, form)? as i64 != w {
            return Ok(false);
        }
    }
    Ok(true)
}

struct Inner<F: Field> {
    entries: Vec<Arc<RegistryEntry<F>>>,
    by_point: HashMap<Point<F::Elem>, Vec<usize>>,
}

/// Forms with fully known divisors, shared between clones. Appends are
/// atomic and idempotent.
#[derive(Clone)]
pub struct Registry<F: Field> {
    curve: PlaneCurve<F>,
    inner: Arc<RwLock<Inner<F>>>,
}

impl<F: Field> Registry<F> {
    pub fn new(curve: &PlaneCurve<F>) -> Self {
        Self { curve: curve.clone(), inner: Arc::new(RwLock::new(Inner { entries: Vec::new(), by_point: HashMap::new() })) }
    }

    pub fn curve(&self) -> &PlaneCurve<F> {
        &self.curve
    }

    pub fn len(&self) -> usize {
        self.inner.read().entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn entries(&self) -> Vec<Arc<RegistryEntry<F>>> {
        self.inner.read().entries.clone()
    }

    pub fn entry(&self, i: usize) -> Arc<RegistryEntry<F>> {
        self.inner.read().entries[i].clone()
    }

    /// Appends unless an entry with the same divisor is present; returns the
    /// index of the entry holding that divisor.
    pub fn push(&self, entry: RegistryEntry<F>) -> usize {
        let mut w = self.inner.write();
        if let Some(i) = w.entries.iter().position(|e| e.divisor == entry.divisor) {
            return i;
        }
        let i = w.entries.len();
        for p in entry.divisor.support() {
            w.by_point.entry(p.clone()).or_default().push(i);
        }
        w.entries.push(Arc::new(entry));
        i
    }

    /// Indices of entries whose divisor contains `p`, in insertion order.
    pub fn covering(&self, p: &Point<F::Elem>) -> Vec<usize> {
        self.inner.read().by_point.get(p).cloned().unwrap_or_default()
    }

    /// A fresh registry with the same entries in the given order.
    pub fn reordered(&self, order: &[usize]) -> Self {
        let r = Self::new(&self.curve);
        let entries = self.entries();
        for &i in order {
            r.push((*entries[i]).clone());
        }
        r
    }

    /// The seed entries: tangent lines at the twelve cusps, the four lines
    /// `X = zeta4^i Y` (when `2^(1/4)` is present) and the cubic through
    /// `P1, P2, P3` (when `delta` is present).
    pub fn seed(curve: &PlaneCurve<F>) -> Result<Self, RrError> {
        let f = curve.field();
        let reg = Self::new(curve);
        let sp = curve.standard_points()?;
        let z8 = f.require(ZETA8)?;
        let z4 = f.require(ZETA4)?;
        let (one, zero) = (f.one(), f.zero());
        for i in 0..4u64 {
            let w = f.neg(&f.pow_u(&z4, i));
            let lines = [
                (format!("tangent A{i}"), Form::linear(f, zero.clone(), one.clone(), w.clone()), &sp.a[i as usize]),
                (format!("tangent B{i}"), Form::linear(f, one.clone(), zero.clone(), w.clone()), &sp.b[i as usize]),
                (
                    format!("tangent C{i}"),
                    Form::linear(f, one.clone(), f.neg(&f.mul(&z8, &f.pow_u(&z4, i))), zero.clone()),
                    &sp.c[i as usize],
                ),
            ];
            for (label, form, p) in lines {
                reg.push(RegistryEntry::new(label, form, Divisor::from_pairs([(p.clone(), 4)])));
            }
        }
        if let Some(r) = f.named(FOURTH_ROOT_2) {
            let rinv = f.inv(&r).map_err(CurveError::from)?;
            for i in 0..4u64 {
                let zi = f.pow_u(&z4, i);
                let mut d = Divisor::zero();
                for j in 0..4u64 {
                    let y = f.mul(&rinv, &f.pow_u(&z4, j));
                    d.add_at(&curve.point([f.mul(&zi, &y), y, one.clone()])?, 1);
                }
                let form = Form::linear(f, one.clone(), f.neg(&zi), zero.clone());
                reg.push(RegistryEntry::new(format!("line X-z4^{i}Y"), form, d));
            }
            if f.named(DELTA).is_some() {
                let form = explicit::f6_prime(f)?;
                let d = Divisor::from_pairs(sp.p()?.iter().map(|p| (p.clone(), 4)));
                reg.push(RegistryEntry::new("f6'", form, d));
            }
        }
        Ok(reg)
    }

    /// Over a finite field, registers the first line through `p` whose
    /// intersection with the curve splits into rational points.
    pub fn extend_for_point(&self, p: &Point<F::Elem>) -> Result<usize, RrError> {
        let f = self.curve.field();
        if f.order().is_none() {
            return Err(RrError::RegistryGap(format!("{p:?}")));
        }
        if let Some(&i) = self.covering(p).first() {
            return Ok(i);
        }
        let basis = linalg::nullspace(f, &[p.coords().to_vec()], 3);
        let (v1, v2) = (&basis[0], &basis[1]);
        let mut candidates: Vec<Vec<F::Elem>> = Vec::new();
        for s in f.elements().unwrap() {
            candidates.push(v1.iter().zip(v2).map(|(a, b)| f.add(a, &f.mul(&s, b))).collect());
        }
        candidates.push(v2.clone());
        for l in candidates {
            let form = Form::linear(f, l[0].clone(), l[1].clone(), l[2].clone());
            if let Some(d) = self.split_line(&l)? {
                debug_assert!(verify_form_divisor(&self.curve, &form, &d)?);
                return Ok(self.push(RegistryEntry::new(format!("line through {p:?}"), form, d)));
            }
        }
        Err(RrError::RegistryGap(format!("{p:?}")))
    }

    /// Intersection divisor of the line `l . (X, Y, Z) = 0` if every
    /// intersection point is rational.
    fn split_line(&self, l: &[F::Elem]) -> Result<Option<Divisor<F::Elem>>, RrError> {
        let f = self.curve.field();
        let basis = linalg::nullspace(f, &[l.to_vec()], 3);
        let (q1, q2) = (&basis[0], &basis[1]);
        // points u*q1 + q2, plus q1 itself at infinity
        let coords: [Vec<F::Elem>; 3] = [0, 1, 2].map(|i| vec![q2[i].clone(), q1[i].clone()]);
        let poly = UniPoly::new(f, eval_form(f, self.curve.form(), &coords, 5));
        if poly.is_zero() {
            return Ok(None);
        }
        let roots = poly.roots_by_scan(f).expect("finite field");
        let mut d = Divisor::zero();
        for (u, m) in roots {
            let c = [0, 1, 2].map(|i| f.add(&f.mul(&u, &q1[i]), &q2[i]));
            d.add_at(&self.curve.point(c)?, m as i64);
        }
        let at_inf = 4 - poly.degree().unwrap() as i64;
        if at_inf > 0 {
            d.add_at(&self.curve.point([q1[0].clone(), q1[1].clone(), q1[2].clone()])?, at_inf);
        }
        Ok((d.degree() == 4).then_some(d))
    }
}
