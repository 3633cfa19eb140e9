//! Truncated power series in one variable and branch expansions at smooth
//! points.

use super::form::Form;
use super::point::Point;
use super::CurveError;
use crate::field::Field;

pub fn mul_trunc<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem], n: usize) -> Vec<F::Elem> {
    let mut out = vec![f.zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            if !f.is_zero(y) {
                out[i + j] = f.add(&out[i + j], &f.mul(x, y));
            }
        }
    }
    out
}

/// `1 / a` modulo `t^n`; `a[0]` must be invertible.
pub fn inv_trunc<F: Field>(f: &F, a: &[F::Elem], n: usize) -> Result<Vec<F::Elem>, CurveError> {
    let c = f.inv(&a[0])?;
    let mut out = vec![f.zero(); n];
    out[0] = c.clone();
    for k in 1..n {
        let mut s = f.zero();
        for j in 1..=k.min(a.len() - 1) {
            if !f.is_zero(&a[j]) {
                s = f.add(&s, &f.mul(&a[j], &out[k - j]));
            }
        }
        out[k] = f.neg(&f.mul(&s, &c));
    }
    Ok(out)
}

/// Index of the first nonzero coefficient.
pub fn valuation<F: Field>(f: &F, a: &[F::Elem]) -> Option<usize> {
    a.iter().position(|x| !f.is_zero(x))
}

/// Successive powers `s^0, ..., s^e` modulo `t^n`.
pub fn powers<F: Field>(f: &F, s: &[F::Elem], e: u32, n: usize) -> Vec<Vec<F::Elem>> {
    let mut one = vec![f.zero(); n];
    if n > 0 {
        one[0] = f.one();
    }
    let mut out = vec![one];
    for _ in 0..e {
        let next = mul_trunc(f, out.last().unwrap(), s, n);
        out.push(next);
    }
    out
}

/// `G(X(t), Y(t), Z(t))` modulo `t^n`.
pub fn eval_form<F: Field>(f: &F, g: &Form<F::Elem>, coords: &[Vec<F::Elem>; 3], n: usize) -> Vec<F::Elem> {
    let d = g.degree();
    let pw: Vec<Vec<Vec<F::Elem>>> = coords.iter().map(|c| powers(f, c, d, n)).collect();
    let mut out = vec![f.zero(); n];
    for (m, c) in g.terms() {
        let t = mul_trunc(f, &mul_trunc(f, &pw[0][m[0] as usize], &pw[1][m[1] as usize], n), &pw[2][m[2] as usize], n);
        for (o, x) in out.iter_mut().zip(&t) {
            if !f.is_zero(x) {
                *o = f.add(o, &f.mul(c, x));
            }
        }
    }
    out
}

/// A branch parametrization at a smooth point: the chart coordinate is 1,
/// the parameter coordinate is `c + t`, and the dependent coordinate is a
/// power series in `t`.
#[derive(Clone, Debug)]
pub struct Branch<F: Field> {
    point: Point<F::Elem>,
    center: [F::Elem; 3],
    chart: usize,
    param: usize,
    dep: usize,
    series: Vec<F::Elem>,
}

impl<F: Field> Branch<F> {
    /// Expansion in the chart `chart`, which must be a nonzero coordinate of
    /// `point`.
    pub(crate) fn compute(
        field: &F,
        form: &Form<F::Elem>,
        partials: &[Form<F::Elem>; 3],
        point: &Point<F::Elem>,
        chart: usize,
        precision: usize,
    ) -> Result<Self, CurveError> {
        if precision == 0 {
            return Err(CurveError::ZeroPrecision);
        }
        let c = point.coords();
        if field.is_zero(&c[chart]) {
            return Err(CurveError::ChartFailure);
        }
        let s = field.inv(&c[chart])?;
        let center = c.clone().map(|x| field.mul(&x, &s));
        let others: Vec<usize> = (0..3).filter(|&i| i != chart).collect();
        let (first, second) = (others[0], others[1]);
        let (param, dep) = if !field.is_zero(&partials[second].eval(field, &center)) {
            (first, second)
        } else if !field.is_zero(&partials[first].eval(field, &center)) {
            (second, first)
        } else {
            return Err(CurveError::SingularPoint(format!("{point:?}")));
        };
        let mut b = Self { point: point.clone(), center, chart, param, dep, series: Vec::new() };
        b.series = vec![b.center[dep].clone()];
        // Newton iteration, doubling the number of correct terms each round
        let mut m = 1;
        while m < precision {
            let m2 = (2 * m).min(precision);
            b.series.resize(m2, field.zero());
            let coords = b.coordinate_series(field, m2);
            let r = eval_form(field, form, &coords, m2);
            let d = eval_form(field, &partials[dep], &coords, m2);
            let corr = mul_trunc(field, &r, &inv_trunc(field, &d, m2)?, m2);
            for (w, x) in b.series.iter_mut().zip(&corr) {
                *w = field.sub(w, x);
            }
            m = m2;
        }
        Ok(b)
    }

    pub fn point(&self) -> &Point<F::Elem> {
        &self.point
    }

    pub fn chart(&self) -> usize {
        self.chart
    }

    pub fn param(&self) -> usize {
        self.param
    }

    pub fn dependent(&self) -> usize {
        self.dep
    }

    pub fn precision(&self) -> usize {
        self.series.len()
    }

    /// Coefficients of the dependent coordinate.
    pub fn series(&self) -> &[F::Elem] {
        &self.series
    }

    pub fn truncate(&self, n: usize) -> Self {
        let mut b = self.clone();
        b.series.truncate(n);
        b
    }

    /// The three coordinates as series modulo `t^n`, `n <= precision`.
    pub fn coordinate_series(&self, field: &F, n: usize) -> [Vec<F::Elem>; 3] {
        let mut out: [Vec<F::Elem>; 3] = [vec![field.zero(); n], vec![field.zero(); n], vec![field.zero(); n]];
        out[self.chart][0] = field.one();
        out[self.param][0] = self.center[self.param].clone();
        if n > 1 {
            out[self.param][1] = field.one();
        }
        for (o, x) in out[self.dep].iter_mut().zip(&self.series) {
            *o = x.clone();
        }
        out
    }

    /// `G` along the branch modulo `t^n`, `n <= precision`.
    pub fn eval(&self, field: &F, g: &Form<F::Elem>, n: usize) -> Vec<F::Elem> {
        assert!(n <= self.precision());
        eval_form(field, g, &self.coordinate_series(field, n), n)
    }

    /// For every monomial of degree `d` (in [`super::form::monomials`]
    /// order), its series modulo `t^n`.
    pub fn monomial_series(&self, field: &F, d: u32, n: usize) -> Vec<Vec<F::Elem>> {
        let coords = self.coordinate_series(field, n);
        let pp = powers(field, &coords[self.param], d, n);
        let pd = powers(field, &coords[self.dep], d, n);
        super::form::monomials(d)
            .iter()
            .map(|m| mul_trunc(field, &pp[m[self.param] as usize], &pd[m[self.dep] as usize], n))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    #[test]
    fn inverse_series() {
        let q = Rationals;
        let a = vec![q.one(), q.from_i64(-1)];
        let inv = inv_trunc(&q, &a, 5).unwrap();
        assert!(inv.iter().all(|x| *x == q.one()));
    }
}
