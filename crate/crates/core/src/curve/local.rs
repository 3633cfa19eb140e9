use std::sync::Arc;

use super::form::Form;
use super::point::{PlaneCurve, Point};
use super::series::{valuation, Branch};
use super::CurveError;
use crate::field::Field;

pub const INITIAL_PRECISION: usize = 16;
pub const MAX_PRECISION: usize = 256;

impl<F: Field> PlaneCurve<F> {
    /// Branch at `p` in its default chart with at least `n` terms, memoized.
    pub fn branch(&self, p: &Point<F::Elem>, n: usize) -> Result<Arc<Branch<F>>, CurveError> {
        if let Some(b) = self.branches.read().get(p) {
            if b.precision() >= n {
                return Ok(b.clone());
            }
        }
        let chart = p.chart(self.field());
        let b = Arc::new(Branch::compute(self.field(), self.form(), self.partials(), p, chart, n.max(INITIAL_PRECISION))?);
        let mut w = self.branches.write();
        match w.get(p) {
            Some(old) if old.precision() >= b.precision() => Ok(old.clone()),
            _ => {
                w.insert(p.clone(), b.clone());
                Ok(b)
            }
        }
    }

    /// Expansion with exactly `n` terms in the default chart.
    pub fn local_expansion(&self, p: &Point<F::Elem>, n: usize) -> Result<Branch<F>, CurveError> {
        if n == 0 {
            return Err(CurveError::ZeroPrecision);
        }
        Ok(self.branch(p, n)?.truncate(n))
    }

    /// Expansion in an explicitly chosen chart (not memoized).
    pub fn local_expansion_in_chart(&self, p: &Point<F::Elem>, chart: usize, n: usize) -> Result<Branch<F>, CurveError> {
        Branch::compute(self.field(), self.form(), self.partials(), p, chart, n)
    }

    /// Order of vanishing of `g` at `p` and the leading coefficient of `g`
    /// along the default branch.
    pub fn ord_and_lead(&self, p: &Point<F::Elem>, g: &Form<F::Elem>) -> Result<(usize, F::Elem), CurveError> {
        let mut n = INITIAL_PRECISION;
        loop {
            let b = self.branch(p, n)?;
            let s = b.eval(self.field(), g, n);
            if let Some(v) = valuation(self.field(), &s) {
                return Ok((v, s[v].clone()));
            }
            if n >= MAX_PRECISION {
                return Err(CurveError::PrecisionExhausted { point: format!("{p:?}"), cap: MAX_PRECISION });
            }
            n *= 2;
        }
    }

    pub fn ord_at(&self, p: &Point<F::Elem>, g: &Form<F::Elem>) -> Result<usize, CurveError> {
        Ok(self.ord_and_lead(p, g)?.0)
    }

    /// Value at `p` of `prod(num) / prod(den)`, which must be a function of
    /// order 0 at `p`.
    pub fn eval_ord0(&self, p: &Point<F::Elem>, num: &[&Form<F::Elem>], den: &[&Form<F::Elem>]) -> Result<F::Elem, CurveError> {
        let f = self.field();
        let deg = |v: &[&Form<F::Elem>]| v.iter().map(|g| g.degree()).sum::<u32>();
        if deg(num) != deg(den) {
            return Err(CurveError::DegreeMismatch);
        }
        let mut ord = 0i64;
        let mut val = f.one();
        for g in num {
            let (o, c) = self.ord_and_lead(p, g)?;
            ord += o as i64;
            val = f.mul(&val, &c);
        }
        for g in den {
            let (o, c) = self.ord_and_lead(p, g)?;
            ord -= o as i64;
            val = f.div(&val, &c)?;
        }
        if ord != 0 {
            return Err(CurveError::OrderMismatch { point: format!("{p:?}"), order: ord });
        }
        Ok(val)
    }

    /// Value at `p` of `prod g^k` over `(g, k)` in `factors`, a function of
    /// order 0 at `p`.
    pub fn eval_ord0_pow(&self, p: &Point<F::Elem>, factors: &[(&Form<F::Elem>, i64)]) -> Result<F::Elem, CurveError> {
        let f = self.field();
        if factors.iter().map(|(g, k)| g.degree() as i64 * k).sum::<i64>() != 0 {
            return Err(CurveError::DegreeMismatch);
        }
        let mut ord = 0i64;
        let mut val = f.one();
        for (g, k) in factors {
            if *k == 0 {
                continue;
            }
            let (o, c) = self.ord_and_lead(p, g)?;
            ord += o as i64 * k;
            val = f.mul(&val, &f.pow(&c, *k)?);
        }
        if ord != 0 {
            return Err(CurveError::OrderMismatch { point: format!("{p:?}"), order: ord });
        }
        Ok(val)
    }
}
