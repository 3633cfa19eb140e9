//! Dense Gaussian elimination over any [`Field`].

use crate::field::Field;

/// Row-echelon basis of a row space, built one row at a time.
///
/// Rows are kept normalized (pivot entry 1) and fully reduced against every
/// other pivot, so the stored rows are always in reduced row echelon form up
/// to row order.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    ncols: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: &F, ncols: usize) -> Self {
        Self { field: field.clone(), ncols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    /// Reduces `row` against the current pivots.
    pub fn reduce(&self, mut row: Vec<F::Elem>) -> Vec<F::Elem> {
        let f = &self.field;
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            if f.is_zero(&row[p]) {
                continue;
            }
            let c = row[p].clone();
            for (j, x) in r.iter().enumerate() {
                if !f.is_zero(x) {
                    row[j] = f.sub(&row[j], &f.mul(&c, x));
                }
            }
        }
        row
    }

    /// Adds `row` to the span; returns whether the rank grew.
    pub fn insert(&mut self, row: Vec<F::Elem>) -> bool {
        assert_eq!(row.len(), self.ncols, "row length");
        let f = self.field.clone();
        let row = self.reduce(row);
        // smallest-weight nonzero entry as pivot keeps coefficients small
        let Some(p) = (0..self.ncols).filter(|&j| !f.is_zero(&row[j])).min_by_key(|&j| f.weight(&row[j])) else {
            return false;
        };
        let inv = f.inv(&row[p]).expect("nonzero pivot");
        let row: Vec<F::Elem> = row.iter().map(|x| f.mul(x, &inv)).collect();
        for r in &mut self.rows {
            if f.is_zero(&r[p]) {
                continue;
            }
            let c = r[p].clone();
            for (j, x) in row.iter().enumerate() {
                if !f.is_zero(x) {
                    r[j] = f.sub(&r[j], &f.mul(&c, x));
                }
            }
        }
        self.rows.push(row);
        self.pivots.push(p);
        true
    }

    pub fn contains(&self, row: &[F::Elem]) -> bool {
        let r = self.reduce(row.to_vec());
        r.iter().all(|x| self.field.is_zero(x))
    }

    /// Basis of `{x : row . x = 0 for every row}`, one vector per free
    /// column, in increasing column order.
    pub fn nullspace(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let mut is_pivot = vec![None; self.ncols];
        for (i, &p) in self.pivots.iter().enumerate() {
            is_pivot[p] = Some(i);
        }
        let mut out = Vec::new();
        for free in 0..self.ncols {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut v = vec![f.zero(); self.ncols];
            v[free] = f.one();
            for (r, &p) in self.rows.iter().zip(&self.pivots) {
                if !f.is_zero(&r[free]) {
                    v[p] = f.neg(&r[free]);
                }
            }
            out.push(v);
        }
        out
    }

    pub fn rows(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }
}

pub fn rank<F: Field>(field: &F, rows: &[Vec<F::Elem>], ncols: usize) -> usize {
    let mut e = Echelon::new(field, ncols);
    for r in rows {
        e.insert(r.clone());
    }
    e.rank()
}

pub fn nullspace<F: Field>(field: &F, rows: &[Vec<F::Elem>], ncols: usize) -> Vec<Vec<F::Elem>> {
    let mut e = Echelon::new(field, ncols);
    for r in rows {
        if e.is_full() {
            break;
        }
        e.insert(r.clone());
    }
    e.nullspace()
}

/// Some solution of `A x = b`, with `A` given by rows.
pub fn solve<F: Field>(field: &F, a: &[Vec<F::Elem>], b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let n = a.first().map_or(0, Vec::len);
    // augmented system [A | -b], look for a kernel vector with last entry 1
    let rows: Vec<Vec<F::Elem>> = a
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut r = r.clone();
            r.push(field.neg(bi));
            r
        })
        .collect();
    let ker = nullspace(field, &rows, n + 1);
    let v = ker.iter().find(|v| !field.is_zero(&v[n]))?;
    let s = field.inv(&v[n]).ok()?;
    Some(v[..n].iter().map(|x| field.mul(x, &s)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn nullspace_of_rank_one() {
        let f = PrimeField::new(7).unwrap();
        let rows = vec![vec![1, 2, 3], vec![2, 4, 6]];
        let ker = nullspace(&f, &rows, 3);
        assert_eq!(ker.len(), 2);
        for v in ker {
            let dot = (0..3).fold(0, |acc, j| f.add(&acc, &f.mul(&rows[0][j], &v[j])));
            assert_eq!(dot, 0);
        }
    }

    #[test]
    fn solve_rational_system() {
        let q = Rationals;
        let r = |n| q.from_i64(n);
        let a = vec![vec![r(2), r(1)], vec![r(1), r(3)]];
        let b = vec![r(3), r(5)];
        let x = solve(&q, &a, &b).unwrap();
        assert_eq!(x, vec![q.rational(4, 5).unwrap(), q.rational(7, 5).unwrap()]);
        assert!(solve(&q, &[vec![r(1), r(1)], vec![r(2), r(2)]], &[r(1), r(3)]).is_none());
    }
}
