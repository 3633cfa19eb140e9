//! Linear algebra over the chain ring `Z/4`.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Z4Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("system has no solution")]
    NoSolution,
    #[error("group closure exceeded {0} elements")]
    ClosureCapExceeded(usize),
    #[error("generator {0} is not invertible")]
    NonInvertibleGenerator(usize),
    #[error("matrix is not a symplectic similitude")]
    NotSimilitude,
}

fn md(x: i64) -> u8 {
    x.rem_euclid(4) as u8
}

/// `u^{-1}` for a unit `u` of `Z/4` (both units are involutions).
fn unit_inv(u: u8) -> u8 {
    debug_assert!(u % 2 == 1);
    u
}

/// Dense row-major matrix with entries in `{0, 1, 2, 3}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Z4Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<u8>,
}

impl fmt::Debug for Z4Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl Z4Matrix {
    pub fn new(rows: usize, cols: usize, entries: &[i64]) -> Result<Self, Z4Error> {
        if entries.len() != rows * cols {
            return Err(Z4Error::DimensionMismatch(format!("{} entries for {rows}x{cols}", entries.len())));
        }
        Ok(Self { rows, cols, entries: entries.iter().map(|&x| md(x)).collect() })
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self, Z4Error> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.as_ref().len() != cols {
                return Err(Z4Error::DimensionMismatch("ragged rows".into()));
            }
            entries.extend(r.as_ref());
        }
        Self::new(rows.len(), cols, &entries)
    }

    /// The matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<u8>]) -> Result<Self, Z4Error> {
        let n = cols.first().map_or(0, |c| c.len());
        let mut m = Self::zero(n, cols.len());
        for (j, c) in cols.iter().enumerate() {
            if c.len() != n {
                return Err(Z4Error::DimensionMismatch("ragged columns".into()));
            }
            for (i, &x) in c.iter().enumerate() {
                m.set(i, j, x as i64);
            }
        }
        Ok(m)
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.entries[i * self.cols + j] = md(v);
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u8> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<u8>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j) as i64);
            }
        }
        t
    }

    fn check_same(&self, other: &Self) -> Result<(), Z4Error> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Z4Error::DimensionMismatch(format!("{}x{} vs {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, Z4Error> {
        self.check_same(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| (a + b) % 4).collect();
        Ok(Self { entries, ..*self })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, Z4Error> {
        self.check_same(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| (a + 4 - b) % 4).collect();
        Ok(Self { entries, ..*self })
    }

    pub fn scale(&self, c: i64) -> Self {
        let c = md(c);
        Self { entries: self.entries.iter().map(|a| (a * c) % 4).collect(), ..*self }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, Z4Error> {
        if self.cols != other.rows {
            return Err(Z4Error::DimensionMismatch(format!("{}x{} * {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let s: u32 = (0..self.cols).map(|k| self.get(i, k) as u32 * other.get(k, j) as u32).sum();
                out.entries[i * other.cols + j] = (s % 4) as u8;
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut e: u32) -> Result<Self, Z4Error> {
        if !self.is_square() {
            return Err(Z4Error::DimensionMismatch("power of a non-square matrix".into()));
        }
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            base = base.mul(&base)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// `M v` for a column vector `v`.
    pub fn apply(&self, v: &[u8]) -> Result<Vec<u8>, Z4Error> {
        if v.len() != self.cols {
            return Err(Z4Error::DimensionMismatch(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        Ok((0..self.rows).map(|i| (self.row(i).iter().zip(v).map(|(a, b)| *a as u32 * *b as u32).sum::<u32>() % 4) as u8).collect())
    }

    /// Determinant modulo 4, by expansion over the integers (sizes here are
    /// at most 6).
    pub fn det(&self) -> Result<u8, Z4Error> {
        if !self.is_square() {
            return Err(Z4Error::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(1);
        }
        let mut a: Vec<Vec<i128>> = (0..n).map(|i| self.row(i).iter().map(|&x| x as i128).collect()).collect();
        // Bareiss fraction-free elimination
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&i| a[i][k] != 0) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return Ok(0),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        Ok((sign * a[n - 1][n - 1]).rem_euclid(4) as u8)
    }

    pub fn is_invertible(&self) -> bool {
        self.det().map(|d| d % 2 == 1).unwrap_or(false)
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_invertible() {
            return None;
        }
        let cols: Vec<Vec<u8>> = (0..self.rows)
            .map(|j| {
                let mut e = vec![0u8; self.rows];
                e[j] = 1;
                solve(self, &e).expect("invertible")
            })
            .collect();
        Self::from_columns(&cols).ok()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.row_vecs().into_iter().map(|r| serde_json::json!(r)).collect())
    }

    pub fn from_json(v: &serde_json::Value) -> Option<Self> {
        let rows: Vec<Vec<i64>> = v.as_array()?.iter().map(|r| r.as_array().map(|r| r.iter().filter_map(|x| x.as_i64()).collect())).collect::<Option<_>>()?;
        Self::from_rows(&rows).ok()
    }
}

fn row_sub_mul(v: &mut [u8], w: &[u8], c: u8) {
    for (a, b) in v.iter_mut().zip(w) {
        *a = (*a + 4 * 4 - c * b) % 4;
    }
}

fn row_scale(v: &[u8], c: u8) -> Vec<u8> {
    v.iter().map(|a| (a * c) % 4).collect()
}

/// Canonical generating set of a row span: one row per pivot column, the
/// pivot being 1 or 2, entries above a pivot 1 cleared and entries above a
/// pivot 2 reduced to `{0, 1}`, and closed under the Howell condition.
pub fn howell_form(m: &Z4Matrix) -> Z4Matrix {
    let n = m.ncols();
    let mut piv: Vec<Option<Vec<u8>>> = vec![None; n];
    let mut queue: VecDeque<Vec<u8>> = m.row_vecs().into();
    while let Some(mut v) = queue.pop_front() {
        for c in 0..n {
            if v[c] == 0 {
                continue;
            }
            match &piv[c] {
                None => {
                    if v[c] % 2 == 1 {
                        v = row_scale(&v, unit_inv(v[c]));
                    }
                    queue.push_back(row_scale(&v, 2));
                    piv[c] = Some(v);
                    break;
                }
                Some(p) if p[c] == 1 => {
                    let c0 = v[c];
                    row_sub_mul(&mut v, p, c0);
                }
                Some(p) => {
                    if v[c] == 2 {
                        row_sub_mul(&mut v, p, 1);
                    } else {
                        let old = p.clone();
                        v = row_scale(&v, unit_inv(v[c]));
                        queue.push_back(row_scale(&v, 2));
                        queue.push_back(old);
                        piv[c] = Some(v);
                        break;
                    }
                }
            }
        }
    }
    // back substitution, first pivot first: a pivot row only touches columns
    // at or right of its pivot, so later steps keep earlier columns reduced
    let cols: Vec<usize> = (0..n).filter(|&c| piv[c].is_some()).collect();
    for &c in &cols {
        let p = piv[c].clone().unwrap();
        for &c2 in cols.iter().filter(|&&c2| c2 < c) {
            let row = piv[c2].as_mut().unwrap();
            let q = if p[c] == 1 { row[c] } else { row[c] / 2 };
            if q != 0 {
                row_sub_mul(row, &p, q);
            }
        }
    }
    let rows: Vec<Vec<i64>> = cols.iter().map(|&c| piv[c].as_ref().unwrap().iter().map(|&x| x as i64).collect()).collect();
    if rows.is_empty() {
        return Z4Matrix::zero(0, n);
    }
    Z4Matrix::from_rows(&rows).expect("rectangular")
}

/// `U M V = diag(d)` with `U`, `V` invertible and `d_i` in `{1, 2, 0}`.
struct Smith {
    u: Z4Matrix,
    v: Z4Matrix,
    diag: Vec<u8>,
}

fn smith(m: &Z4Matrix) -> Smith {
    let (r, c) = (m.nrows(), m.ncols());
    let mut a = m.clone();
    let mut u = Z4Matrix::identity(r);
    let mut v = Z4Matrix::identity(c);
    let swap_rows = |x: &mut Z4Matrix, i: usize, j: usize| {
        for k in 0..x.cols {
            x.entries.swap(i * x.cols + k, j * x.cols + k);
        }
    };
    let swap_cols = |x: &mut Z4Matrix, i: usize, j: usize| {
        for k in 0..x.rows {
            x.entries.swap(k * x.cols + i, k * x.cols + j);
        }
    };
    // row_i -= q row_k ; col_j -= q col_k
    let row_op = |x: &mut Z4Matrix, i: usize, k: usize, q: u8| {
        for t in 0..x.cols {
            let val = x.get(i, t) as i64 - q as i64 * x.get(k, t) as i64;
            x.set(i, t, val);
        }
    };
    let col_op = |x: &mut Z4Matrix, j: usize, k: usize, q: u8| {
        for t in 0..x.rows {
            let val = x.get(t, j) as i64 - q as i64 * x.get(t, k) as i64;
            x.set(t, j, val);
        }
    };
    let mut diag = Vec::new();
    for k in 0..r.min(c) {
        let mut best: Option<(usize, usize)> = None;
        'find: for want in [true, false] {
            for i in k..r {
                for j in k..c {
                    let x = a.get(i, j);
                    if x != 0 && (x % 2 == 1) == want {
                        best = Some((i, j));
                        break 'find;
                    }
                }
            }
        }
        let Some((i, j)) = best else {
            diag.push(0);
            continue;
        };
        swap_rows(&mut a, i, k);
        swap_rows(&mut u, i, k);
        swap_cols(&mut a, j, k);
        swap_cols(&mut v, j, k);
        let p = a.get(k, k);
        if p % 2 == 1 {
            let inv = unit_inv(p);
            for t in 0..c {
                let val = a.get(k, t) as i64 * inv as i64;
                a.set(k, t, val);
            }
            for t in 0..r {
                let val = u.get(k, t) as i64 * inv as i64;
                u.set(k, t, val);
            }
        }
        let p = a.get(k, k);
        for i in 0..r {
            if i != k && a.get(i, k) != 0 {
                let q = if p == 1 { a.get(i, k) } else { a.get(i, k) / 2 };
                row_op(&mut a, i, k, q);
                row_op(&mut u, i, k, q);
            }
        }
        for j in 0..c {
            if j != k && a.get(k, j) != 0 {
                let q = if p == 1 { a.get(k, j) } else { a.get(k, j) / 2 };
                col_op(&mut a, j, k, q);
                col_op(&mut v, j, k, q);
            }
        }
        diag.push(p);
    }
    Smith { u, v, diag }
}

/// A submodule of `(Z/4)^n` with its elementary type `(Z/4)^a + (Z/2)^b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleStructure {
    /// Howell form of the submodule.
    pub generators: Vec<Vec<u8>>,
    pub a: usize,
    pub b: usize,
}

impl ModuleStructure {
    pub fn order(&self) -> u64 {
        4u64.pow(self.a as u32) * 2u64.pow(self.b as u32)
    }

    pub fn from_generators(n: usize, gens: &[Vec<u8>]) -> Result<Self, Z4Error> {
        let m = if gens.is_empty() { Z4Matrix::zero(0, n) } else { Z4Matrix::from_rows(&gens.iter().map(|g| g.iter().map(|&x| x as i64).collect::<Vec<_>>()).collect::<Vec<_>>())? };
        if m.ncols() != n {
            return Err(Z4Error::DimensionMismatch("generator length".into()));
        }
        let h = howell_form(&m);
        // the type of a span is read off the Smith form of its generators
        let s = smith(&h);
        let a = s.diag.iter().filter(|&&d| d == 1).count();
        let b = s.diag.iter().filter(|&&d| d == 2).count();
        Ok(Self { generators: h.row_vecs(), a, b })
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        let n = v.len();
        let mut gens = self.generators.clone();
        gens.push(v.to_vec());
        ModuleStructure::from_generators(n, &gens).map(|m| m.generators == self.generators).unwrap_or(false)
    }

    /// Same submodule as the span of `gens`.
    pub fn spans_same(&self, gens: &[Vec<u8>]) -> bool {
        let n = self.generators.first().map_or_else(|| gens.first().map_or(0, |g| g.len()), |g| g.len());
        ModuleStructure::from_generators(n, gens).map(|m| m.generators == self.generators).unwrap_or(false)
    }

    pub fn is_submodule_of(&self, other: &Self) -> bool {
        self.generators.iter().all(|g| other.contains(g))
    }

    pub fn type_label(&self) -> String {
        let mut parts = Vec::new();
        if self.a > 0 {
            parts.push(if self.a == 1 { "Z/4".to_string() } else { format!("(Z/4)^{}", self.a) });
        }
        if self.b > 0 {
            parts.push(if self.b == 1 { "Z/2".to_string() } else { format!("(Z/2)^{}", self.b) });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// `{ x : M x = 0 }`.
pub fn kernel(m: &Z4Matrix) -> ModuleStructure {
    let s = smith(m);
    let c = m.ncols();
    let mut gens = Vec::new();
    for j in 0..c {
        let col = s.v.column(j);
        match s.diag.get(j).copied().unwrap_or(0) {
            0 => gens.push(col),
            2 => gens.push(row_scale(&col, 2)),
            _ => {}
        }
    }
    ModuleStructure::from_generators(c, &gens).expect("consistent lengths")
}

/// Some `x` with `M x = b`.
pub fn solve(m: &Z4Matrix, b: &[u8]) -> Result<Vec<u8>, Z4Error> {
    if b.len() != m.nrows() {
        return Err(Z4Error::DimensionMismatch(format!("right-hand side of length {} for {} rows", b.len(), m.nrows())));
    }
    let s = smith(m);
    let ub = s.u.apply(b)?;
    let mut y = vec![0u8; m.ncols()];
    for (i, &t) in ub.iter().enumerate() {
        match s.diag.get(i).copied().unwrap_or(0) {
            1 => y[i] = t,
            2 if t % 2 == 0 => y[i] = t / 2,
            0 if t == 0 => {}
            _ => return Err(Z4Error::NoSolution),
        }
    }
    s.v.apply(&y)
}

/// Vectors fixed by every matrix in `mats`.
pub fn fixed_submodule(mats: &[Z4Matrix]) -> Result<ModuleStructure, Z4Error> {
    let n = mats.first().map_or(0, |m| m.nrows());
    let mut stacked: Vec<Vec<i64>> = Vec::new();
    for m in mats {
        if !m.is_square() || m.nrows() != n {
            return Err(Z4Error::DimensionMismatch("fixed_submodule needs square matrices of one size".into()));
        }
        let d = m.sub(&Z4Matrix::identity(n))?;
        stacked.extend(d.row_vecs().into_iter().map(|r| r.into_iter().map(|x| x as i64).collect::<Vec<_>>()));
    }
    if stacked.is_empty() {
        return Ok(kernel(&Z4Matrix::zero(1, n)));
    }
    Ok(kernel(&Z4Matrix::from_rows(&stacked)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupClosure {
    pub elements: Vec<Z4Matrix>,
    pub abelian: bool,
    pub cyclic: bool,
    pub dihedral8: bool,
}

impl GroupClosure {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

pub const CLOSURE_CAP: usize = 10000;

pub fn element_order(g: &Z4Matrix) -> usize {
    let id = Z4Matrix::identity(g.nrows());
    let mut x = g.clone();
    let mut k = 1;
    while x != id {
        x = x.mul(g).expect("square");
        k += 1;
    }
    k
}

/// Breadth-first closure of the group generated by `gens`.
pub fn group_closure(gens: &[Z4Matrix]) -> Result<GroupClosure, Z4Error> {
    let n = gens.first().map_or(0, |g| g.nrows());
    for (i, g) in gens.iter().enumerate() {
        if !g.is_square() || g.nrows() != n {
            return Err(Z4Error::DimensionMismatch("generators of different sizes".into()));
        }
        if !g.is_invertible() {
            return Err(Z4Error::NonInvertibleGenerator(i));
        }
    }
    let id = Z4Matrix::identity(n);
    let mut seen: HashSet<Z4Matrix> = HashSet::from([id.clone()]);
    let mut elements = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.mul(g)?;
            if seen.insert(y.clone()) {
                if seen.len() > CLOSURE_CAP {
                    return Err(Z4Error::ClosureCapExceeded(CLOSURE_CAP));
                }
                elements.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    elements.sort();
    let abelian = elements.iter().all(|a| elements.iter().all(|b| a.mul(b).unwrap() == b.mul(a).unwrap()));
    let orders: Vec<usize> = elements.iter().map(element_order).collect();
    let cyclic = orders.contains(&elements.len());
    let dihedral8 = elements.len() == 8 && {
        let mut found = false;
        for (r, &or) in elements.iter().zip(&orders) {
            if or != 4 {
                continue;
            }
            let r3 = r.pow(3)?;
            let powers: Vec<Z4Matrix> = (0..4).map(|k| r.pow(k).unwrap()).collect();
            for (s, &os) in elements.iter().zip(&orders) {
                if os == 2 && !powers.contains(s) && s.mul(r)?.mul(s)? == r3 {
                    found = true;
                }
            }
        }
        found
    };
    Ok(GroupClosure { elements, abelian, cyclic, dihedral8 })
}

/// The multiplier `c` with `g^T J g = c J`.
pub fn gsp_check(g: &Z4Matrix, j: &Z4Matrix) -> Result<u8, Z4Error> {
    if !g.is_square() || !j.is_square() || g.nrows() != j.nrows() {
        return Err(Z4Error::DimensionMismatch("gsp_check needs square matrices of one size".into()));
    }
    let lhs = g.transpose().mul(j)?.mul(g)?;
    [1u8, 3].into_iter().find(|&c| lhs == j.scale(c as i64)).ok_or(Z4Error::NotSimilitude)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_two() {
        let k = kernel(&Z4Matrix::from_rows(&[[2]]).unwrap());
        assert_eq!(k.generators, vec![vec![2]]);
        assert_eq!((k.a, k.b), (0, 1));
    }

    #[test]
    fn solve_identity() {
        let b = vec![3, 1, 2];
        assert_eq!(solve(&Z4Matrix::identity(3), &b).unwrap(), b);
    }

    #[test]
    fn howell_of_two_row() {
        let h = howell_form(&Z4Matrix::from_rows(&[[2, 0]]).unwrap());
        assert_eq!(h.row_vecs(), vec![vec![2, 0]]);
    }

    #[test]
    fn howell_adds_annihilator_rows() {
        // 2 * (2 1) = (0 2) needs its own row
        let h = howell_form(&Z4Matrix::from_rows(&[[2, 1]]).unwrap());
        assert_eq!(h.row_vecs(), vec![vec![2, 1], vec![0, 2]]);
    }

    #[test]
    fn determinant_and_inverse() {
        let m = Z4Matrix::from_rows(&[[1, 2], [3, 3]]).unwrap();
        assert_eq!(m.det().unwrap(), 1);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Z4Matrix::identity(2));
        assert!(Z4Matrix::from_rows(&[[2, 0], [0, 1]]).unwrap().inverse().is_none());
    }

    #[test]
    fn closure_of_identity() {
        let c = group_closure(&[Z4Matrix::identity(3)]).unwrap();
        assert_eq!(c.order(), 1);
        assert!(c.cyclic && c.abelian && !c.dihedral8);
    }
}
