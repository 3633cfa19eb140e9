use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use parking_lot::RwLock;
use sha2::{Digest, Sha256};

use super::form::Form;
use super::series::Branch;
use super::CurveError;
use crate::field::standard::{FOURTH_ROOT_2, ZETA4, ZETA8};
use crate::field::Field;

/// A projective point, scaled so that its last nonzero coordinate is 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point<E> {
    coords: [E; 3],
}

impl<E: fmt::Debug> fmt::Debug for Point<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?} : {:?} : {:?}]", self.coords[0], self.coords[1], self.coords[2])
    }
}

impl<E: Clone> Point<E> {
    pub fn coords(&self) -> &[E; 3] {
        &self.coords
    }

    /// Index of the coordinate equal to 1.
    pub fn chart<F: Field<Elem = E>>(&self, field: &F) -> usize {
        (0..3).rev().find(|&i| !field.is_zero(&self.coords[i])).expect("normalized point")
    }

    pub fn to_json<F: Field<Elem = E>>(&self, field: &F) -> serde_json::Value {
        serde_json::Value::Array(self.coords.iter().map(|c| field.to_json(c)).collect())
    }

    pub fn from_json<F: Field<Elem = E>>(field: &F, v: &serde_json::Value) -> Result<Self, CurveError> {
        let arr = v.as_array().filter(|a| a.len() == 3).ok_or_else(|| CurveError::Decode(v.to_string()))?;
        let c: Vec<E> = arr.iter().map(|x| field.from_json(x)).collect::<Result<_, _>>()?;
        let coords = normalize(field, [c[0].clone(), c[1].clone(), c[2].clone()])?;
        Ok(Self { coords })
    }
}

/// Scales so that the last nonzero coordinate is 1.
pub fn normalize<F: Field>(field: &F, c: [F::Elem; 3]) -> Result<[F::Elem; 3], CurveError> {
    let i = (0..3).rev().find(|&i| !field.is_zero(&c[i])).ok_or(CurveError::AllZeroCoordinates)?;
    let s = field.inv(&c[i])?;
    Ok(c.map(|x| field.mul(&x, &s)))
}

/// A plane quartic `F(X, Y, Z) = 0`.
#[derive(Clone)]
pub struct PlaneCurve<F: Field> {
    field: F,
    form: Form<F::Elem>,
    partials: [Form<F::Elem>; 3],
    /// Longest expansion computed so far at each point, in its default chart.
    pub(crate) branches: Arc<RwLock<HashMap<Point<F::Elem>, Arc<Branch<F>>>>>,
}

impl<F: Field> fmt::Debug for PlaneCurve<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} = 0 over {:?}", self.form, self.field)
    }
}

impl<F: Field> PlaneCurve<F> {
    pub fn new(field: &F, form: Form<F::Elem>) -> Result<Self, CurveError> {
        if form.degree() != 4 || form.is_zero() {
            return Err(CurveError::BadForm);
        }
        let partials = [0, 1, 2].map(|i| form.derivative(field, i));
        Ok(Self { field: field.clone(), form, partials, branches: Arc::default() })
    }

    /// `X^4 + Y^4 - Z^4`.
    pub fn fermat(field: &F) -> Self {
        let form = Form::from_terms(
            field,
            4,
            vec![([4, 0, 0], field.one()), ([0, 4, 0], field.one()), ([0, 0, 4], field.from_i64(-1))],
        );
        Self::new(field, form).expect("quartic")
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn form(&self) -> &Form<F::Elem> {
        &self.form
    }

    pub fn partial(&self, i: usize) -> &Form<F::Elem> {
        &self.partials[i]
    }

    pub fn partials(&self) -> &[Form<F::Elem>; 3] {
        &self.partials
    }

    /// Normal form of `g` modulo the curve: terms divisible by the leading
    /// monomial of the defining form (lexicographically, `X` first) are
    /// rewritten until none remain.
    pub fn reduce(&self, g: &Form<F::Elem>) -> Form<F::Elem> {
        let f = &self.field;
        let (lead, lc) = super::form::monomials(4)
            .into_iter()
            .find_map(|m| {
                let c = self.form.coeff(f, &m);
                (!f.is_zero(&c)).then_some((m, c))
            })
            .expect("nonzero form");
        let lc_inv = f.inv(&lc).expect("nonzero");
        let mut g = g.clone();
        loop {
            let hit = g
                .terms()
                .filter(|(m, _)| (0..3).all(|i| m[i] >= lead[i]))
                .max_by_key(|(m, _)| **m)
                .map(|(m, c)| (*m, c.clone()));
            let Some((m, c)) = hit else { return g };
            let q = [m[0] - lead[0], m[1] - lead[1], m[2] - lead[2]];
            let mono = Form::from_terms(f, g.degree() - 4, vec![(q, f.mul(&c, &lc_inv))]);
            g = g.sub(f, &mono.mul(f, &self.form));
        }
    }

    /// Hash of the field descriptor and the defining form.
    pub fn fingerprint(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.field.descriptor().as_bytes());
        h.update(self.form.to_json(&self.field).to_string().as_bytes());
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn contains(&self, coords: &[F::Elem; 3]) -> Result<bool, CurveError> {
        let c = normalize(&self.field, coords.clone())?;
        Ok(self.field.is_zero(&self.form.eval(&self.field, &c)))
    }

    pub fn point(&self, coords: [F::Elem; 3]) -> Result<Point<F::Elem>, CurveError> {
        let coords = normalize(&self.field, coords)?;
        if !self.field.is_zero(&self.form.eval(&self.field, &coords)) {
            return Err(CurveError::NotOnCurve(format!("{coords:?}")));
        }
        Ok(Point { coords })
    }

    pub fn is_smooth_at(&self, p: &Point<F::Elem>) -> bool {
        self.partials.iter().any(|d| !self.field.is_zero(&d.eval(&self.field, &p.coords)))
    }

    /// Every point over a finite field, sorted.
    pub fn enumerate_points(&self) -> Result<Vec<Point<F::Elem>>, CurveError> {
        let f = &self.field;
        let elems = f.elements().ok_or(CurveError::InfiniteField)?;
        let mut out = Vec::new();
        let mut push = |c: [F::Elem; 3]| {
            if f.is_zero(&self.form.eval(f, &c)) {
                out.push(Point { coords: c });
            }
        };
        for x in &elems {
            for y in &elems {
                push([x.clone(), y.clone(), f.one()]);
            }
            push([x.clone(), f.one(), f.zero()]);
        }
        push([f.one(), f.zero(), f.zero()]);
        out.sort();
        Ok(out)
    }

    /// The twelve cusps and, when `2^(1/4)` is available, `P1, P2, P3`.
    pub fn standard_points(&self) -> Result<StandardPoints<F::Elem>, CurveError> {
        let f = &self.field;
        let z8 = f.require(ZETA8)?;
        let z4 = f.named(ZETA4).unwrap_or_else(|| f.square(&z8));
        let pw = |i: u64| f.pow_u(&z4, i);
        let mut a = Vec::new();
        let mut b = Vec::new();
        let mut c = Vec::new();
        for i in 0..4 {
            a.push(self.point([f.zero(), pw(i), f.one()])?);
            b.push(self.point([pw(i), f.zero(), f.one()])?);
            c.push(self.point([f.mul(&z8, &pw(i)), f.one(), f.zero()])?);
        }
        let p = match f.named(FOURTH_ROOT_2) {
            Some(r) => {
                let inv = f.inv(&r)?;
                Some([
                    self.point([f.mul(&r, &z4), z8.clone(), f.one()])?,
                    self.point([z8.clone(), f.mul(&r, &z4), f.one()])?,
                    self.point([inv.clone(), inv, f.one()])?,
                ])
            }
            None => None,
        };
        let arr = |v: Vec<Point<F::Elem>>| -> [Point<F::Elem>; 4] { v.try_into().expect("four points") };
        Ok(StandardPoints { a: arr(a), b: arr(b), c: arr(c), p })
    }
}

/// Cusps `A_i = [0 : zeta4^i : 1]`, `B_i = [zeta4^i : 0 : 1]`,
/// `C_i = [zeta8 zeta4^i : 1 : 0]`, and the points `P_1, P_2, P_3`.
#[derive(Clone, Debug)]
pub struct StandardPoints<E> {
    pub a: [Point<E>; 4],
    pub b: [Point<E>; 4],
    pub c: [Point<E>; 4],
    pub p: Option<[Point<E>; 3]>,
}

impl<E: Clone> StandardPoints<E> {
    pub fn cusps(&self) -> Vec<Point<E>> {
        self.a.iter().chain(&self.b).chain(&self.c).cloned().collect()
    }

    pub fn labeled(&self) -> Vec<(String, Point<E>)> {
        let mut out = Vec::new();
        for (name, arr) in [("A", &self.a), ("B", &self.b), ("C", &self.c)] {
            for (i, p) in arr.iter().enumerate() {
                out.push((format!("{name}{i}"), p.clone()));
            }
        }
        if let Some(ps) = &self.p {
            for (i, p) in ps.iter().enumerate() {
                out.push((format!("P{}", i + 1), p.clone()));
            }
        }
        out
    }

    pub fn get(&self, label: &str) -> Option<Point<E>> {
        self.labeled().into_iter().find(|(l, _)| l == label).map(|(_, p)| p)
    }

    pub fn p(&self) -> Result<&[Point<E>; 3], CurveError> {
        self.p.as_ref().ok_or_else(|| CurveError::MissingElement(FOURTH_ROOT_2.to_string()))
    }

    /// Label of `q` if it is one of the standard points.
    pub fn label_of(&self, q: &Point<E>) -> Option<String>
    where
        E: PartialEq,
    {
        self.labeled().into_iter().find(|(_, p)| p == q).map(|(l, _)| l)
    }
}
