use std::collections::BTreeMap;
use std::fmt;

use crate::curve::{CurveError, Point};
use crate::field::Field;

/// A finite formal sum of points; zero weights are never stored and points
/// are kept in their canonical order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Divisor<E> {
    weights: BTreeMap<Point<E>, i64>,
}

impl<E: fmt::Debug> fmt::Debug for Divisor<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.weights.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.weights.iter().map(|(p, w)| format!("{w}*{p:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<E> Default for Divisor<E> {
    fn default() -> Self {
        Self { weights: BTreeMap::new() }
    }
}

impl<E: Clone + Ord> Divisor<E> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn point(p: &Point<E>) -> Self {
        Self::from_pairs([(p.clone(), 1)])
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Point<E>, i64)>) -> Self {
        let mut d = Self::zero();
        for (p, w) in pairs {
            d.add_at(&p, w);
        }
        d
    }

    pub fn add_at(&mut self, p: &Point<E>, w: i64) {
        if w == 0 {
            return;
        }
        let e = self.weights.entry(p.clone()).or_insert(0);
        *e += w;
        if *e == 0 {
            self.weights.remove(p);
        }
    }

    pub fn get(&self, p: &Point<E>) -> i64 {
        self.weights.get(p).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> i64 {
        self.weights.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn is_effective(&self) -> bool {
        self.weights.values().all(|&w| w > 0)
    }

    pub fn support(&self) -> impl Iterator<Item = &Point<E>> {
        self.weights.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Point<E>, i64)> {
        self.weights.iter().map(|(p, w)| (p, *w))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut d = self.clone();
        for (p, w) in &other.weights {
            d.add_at(p, *w);
        }
        d
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: i64) -> Self {
        if k == 0 {
            return Self::zero();
        }
        Self { weights: self.weights.iter().map(|(p, w)| (p.clone(), w * k)).collect() }
    }

    pub fn positive_part(&self) -> Self {
        Self { weights: self.weights.iter().filter(|(_, w)| **w > 0).map(|(p, w)| (p.clone(), *w)).collect() }
    }

    pub fn negative_part(&self) -> Self {
        Self { weights: self.weights.iter().filter(|(_, w)| **w < 0).map(|(p, w)| (p.clone(), -*w)).collect() }
    }

    /// Pushes every point through `f`, merging weights of collisions.
    pub fn map_points<E2: Clone + Ord>(&self, mut f: impl FnMut(&Point<E>) -> Result<Point<E2>, CurveError>) -> Result<Divisor<E2>, CurveError> {
        let mut out = Divisor::zero();
        for (p, w) in &self.weights {
            out.add_at(&f(p)?, *w);
        }
        Ok(out)
    }

    pub fn to_json<F: Field<Elem = E>>(&self, field: &F) -> serde_json::Value {
        serde_json::Value::Array(
            self.weights.iter().map(|(p, w)| serde_json::json!({ "point": p.to_json(field), "weight": w })).collect(),
        )
    }

    pub fn from_json<F: Field<Elem = E>>(field: &F, v: &serde_json::Value) -> Result<Self, CurveError> {
        let bad = || CurveError::Decode(v.to_string());
        let mut d = Self::zero();
        for item in v.as_array().ok_or_else(bad)? {
            let p = Point::from_json(field, item.get("point").ok_or_else(bad)?)?;
            let w = item.get("weight").and_then(|w| w.as_i64()).ok_or_else(bad)?;
            d.add_at(&p, w);
        }
        Ok(d)
    }
}
