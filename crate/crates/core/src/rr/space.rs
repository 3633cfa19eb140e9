use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use parking_lot::RwLock;

use super::divisor::Divisor;
use super::registry::{Registry, RegistryEntry};
use super::RrError;
use crate::curve::{monomials, Form, PlaneCurve, Point};
use crate::field::Field;
use crate::linalg::Echelon;

/// A basis of `L(D)` written as `g / h0` with a common denominator.
#[derive(Clone, Debug)]
pub struct RRSpace<F: Field> {
    pub dimension: usize,
    /// Factors of `h0`, each a registry form.
    pub denominator: Vec<Form<F::Elem>>,
    pub numerators: Vec<Form<F::Elem>>,
    pub degree: u32,
}

impl<F: Field> RRSpace<F> {
    pub fn denominator_product(&self, field: &F) -> Form<F::Elem> {
        Form::product(field, &self.denominator)
    }
}

/// Number of forms of degree `d - 4`, i.e. multiples of the curve among
/// forms of degree `d`.
pub fn curve_multiples(d: u32) -> usize {
    if d >= 4 {
        ((d - 2) * (d - 3) / 2) as usize
    } else {
        0
    }
}

type RowTable<E> = Arc<Vec<Vec<E>>>;

/// Riemann-Roch spaces by interpolation against registry denominators.
#[derive(Clone)]
pub struct RiemannRoch<F: Field> {
    curve: PlaneCurve<F>,
    registry: Registry<F>,
    /// `(point, degree)` -> row `j` holds the `t^j` coefficients of all
    /// monomials of that degree along the branch
    rows: Arc<RwLock<HashMap<(Point<F::Elem>, u32), RowTable<F::Elem>>>>,
}

impl<F: Field> RiemannRoch<F> {
    pub fn new(registry: &Registry<F>) -> Self {
        Self { curve: registry.curve().clone(), registry: registry.clone(), rows: Arc::default() }
    }

    pub fn curve(&self) -> &PlaneCurve<F> {
        &self.curve
    }

    pub fn registry(&self) -> &Registry<F> {
        &self.registry
    }

    fn field(&self) -> &F {
        self.curve.field()
    }

    fn monomial_rows(&self, p: &Point<F::Elem>, d: u32, k: usize) -> Result<RowTable<F::Elem>, RrError> {
        let key = (p.clone(), d);
        if let Some(t) = self.rows.read().get(&key) {
            if t.len() >= k {
                return Ok(t.clone());
            }
        }
        let f = self.field();
        let branch = self.curve.branch(p, k)?;
        let series = branch.monomial_series(f, d, k);
        let table: Vec<Vec<F::Elem>> = (0..k).map(|j| series.iter().map(|s| s[j].clone()).collect()).collect();
        let table = Arc::new(table);
        let mut w = self.rows.write();
        match w.get(&key) {
            Some(old) if old.len() >= k => Ok(old.clone()),
            _ => {
                w.insert(key, table.clone());
                Ok(table)
            }
        }
    }

    /// Greedy choice of registry entries dominating `target` pointwise:
    /// lowest degree first, then largest reduction of the remaining
    /// deficit, then registry order.
    pub fn cover(&self, target: &Divisor<F::Elem>) -> Result<Vec<Arc<RegistryEntry<F>>>, RrError> {
        let mut deficit: BTreeMap<Point<F::Elem>, i64> = target.iter().filter(|(_, w)| *w > 0).map(|(p, w)| (p.clone(), w)).collect();
        let mut chosen = Vec::new();
        while !deficit.is_empty() {
            let mut cands: Vec<usize> = Vec::new();
            for p in deficit.keys() {
                let mut c = self.registry.covering(p);
                if c.is_empty() {
                    self.registry.extend_for_point(p)?;
                    c = self.registry.covering(p);
                }
                cands.extend(c);
            }
            cands.sort_unstable();
            cands.dedup();
            let best = cands
                .into_iter()
                .map(|i| {
                    let e = self.registry.entry(i);
                    let gain: i64 = e.divisor.iter().map(|(p, w)| deficit.get(p).map_or(0, |d| w.min(*d))).sum();
                    (e.degree(), -gain, i, e)
                })
                .min_by_key(|(d, g, i, _)| (*d, *g, *i))
                .map(|(_, _, _, e)| e)
                .expect("covered point");
            for (p, w) in best.divisor.iter() {
                if let Some(d) = deficit.get_mut(p) {
                    *d -= w;
                    if *d <= 0 {
                        deficit.remove(p);
                    }
                }
            }
            chosen.push(best);
        }
        Ok(chosen)
    }

    /// Linear conditions on forms of degree `d` for `div(g) >= H - D`.
    fn conditions(&self, d: &Divisor<F::Elem>, cover: &[Arc<RegistryEntry<F>>]) -> Result<(u32, Echelon<F>, usize), RrError> {
        let mut h = Divisor::zero();
        for e in cover {
            h = h.add(&e.divisor);
        }
        let deg: u32 = cover.iter().map(|e| e.degree()).sum();
        let need = h.sub(d);
        if !d.positive_part().sub(&h).positive_part().is_zero() {
            return Err(RrError::CoverTooSmall);
        }
        let ncols = monomials(deg).len();
        let floor = curve_multiples(deg);
        let mut ech = Echelon::new(self.field(), ncols);
        for (p, k) in need.iter() {
            if k <= 0 {
                continue;
            }
            let table = self.monomial_rows(p, deg, k as usize)?;
            for row in table.iter().take(k as usize) {
                if ncols - ech.rank() <= floor {
                    return Ok((deg, ech, floor));
                }
                ech.insert(row.clone());
            }
        }
        Ok((deg, ech, floor))
    }

    /// `dim L(D)` only.
    pub fn h0(&self, d: &Divisor<F::Elem>) -> Result<usize, RrError> {
        if d.degree() < 0 {
            return Ok(0);
        }
        let cover = self.cover(d)?;
        let (_, ech, floor) = self.conditions(d, &cover)?;
        Ok(ech.ncols() - ech.rank() - floor)
    }

    pub fn space(&self, d: &Divisor<F::Elem>) -> Result<RRSpace<F>, RrError> {
        let cover = self.cover(d)?;
        self.space_with_cover(d, &cover)
    }

    /// Same computation with a caller-chosen denominator covering.
    pub fn space_with_cover(&self, d: &Divisor<F::Elem>, cover: &[Arc<RegistryEntry<F>>]) -> Result<RRSpace<F>, RrError> {
        let f = self.field();
        let (deg, ech, floor) = self.conditions(d, cover)?;
        let denominator: Vec<Form<F::Elem>> = cover.iter().map(|e| e.form.clone()).collect();
        let dimension = ech.ncols() - ech.rank() - floor;
        if dimension == 0 {
            return Ok(RRSpace { dimension, denominator, numerators: Vec::new(), degree: deg });
        }
        let mut reduced = Echelon::new(f, ech.ncols());
        let mut numerators = Vec::new();
        for v in ech.nullspace() {
            let g = self.curve.reduce(&Form::from_coeff_vector(f, deg, &v));
            if !g.is_zero() && reduced.insert(g.coeff_vector(f)) {
                numerators.push(g);
            }
        }
        if numerators.len() != dimension {
            return Err(RrError::Inconsistent(format!("{} independent numerators for dimension {dimension}", numerators.len())));
        }
        Ok(RRSpace { dimension, denominator, numerators, degree: deg })
    }

    pub fn is_principal(&self, d: &Divisor<F::Elem>) -> Result<bool, RrError> {
        Ok(d.degree() == 0 && self.h0(d)? == 1)
    }

    /// Unequal degrees are reported as not equivalent.
    pub fn linearly_equivalent(&self, a: &Divisor<F::Elem>, b: &Divisor<F::Elem>) -> Result<bool, RrError> {
        self.is_principal(&a.sub(b))
    }

    pub fn is_effective_class(&self, d: &Divisor<F::Elem>) -> Result<bool, RrError> {
        Ok(self.h0(d)? >= 1)
    }

    /// A function `g / h0` with divisor exactly `-d`, for principal `d`.
    pub fn principal_function(&self, d: &Divisor<F::Elem>) -> Result<Option<(Form<F::Elem>, Vec<Form<F::Elem>>)>, RrError> {
        if d.degree() != 0 {
            return Ok(None);
        }
        let s = self.space(d)?;
        if s.dimension != 1 {
            return Ok(None);
        }
        Ok(Some((s.numerators[0].clone(), s.denominator)))
    }
}
