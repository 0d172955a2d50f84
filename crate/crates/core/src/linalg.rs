//! Dense exact linear algebra over the rationals.
//!
//! Vectors are rows; a matrix `A` acts on a row vector `v` by `v * A`.

use crate::scalar::Q;
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    /// Builds a matrix from rows; all rows must have length `cols`.
    pub fn from_rows(rows: Vec<Vec<Q>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length mismatch");
            data.extend(r);
        }
        Matrix { rows: n, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Q) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Q>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &Q) -> Matrix {
        let data = self.data.iter().map(|a| a * s).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    /// Adds `s * other` into `self`.
    pub fn add_scaled(&mut self, other: &Matrix, s: &Q) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        if s.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                *a += b * s;
            }
        }
    }

    /// `v * self` for a row vector `v`.
    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![Q::zero(); self.cols];
        for (i, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let b = self.get(i, j);
                if !b.is_zero() {
                    *o += a * b;
                }
            }
        }
        out
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let sub = m.get(r, j) * &f;
                    if !sub.is_zero() {
                        let idx = i * m.cols + j;
                        m.data[idx] -= sub;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : self * x^T = 0}`, i.e. column vectors killed from the left.
    pub fn nullspace(&self) -> Vec<Vec<Q>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![Q::zero(); self.cols];
            v[f] = Q::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(i, f).clone();
            }
            out.push(v);
        }
        out
    }

    /// Basis of `{x : x * self = 0}`.
    pub fn left_nullspace(&self) -> Vec<Vec<Q>> {
        self.transpose().nullspace()
    }

    /// Some `x` with `x * self = b`, if one exists.
    pub fn solve_left(&self, b: &[Q]) -> Option<Vec<Q>> {
        assert_eq!(b.len(), self.cols);
        // Solve self^T x^T = b^T by row reduction of the augmented system.
        let t = self.transpose();
        let mut aug = Matrix::zeros(t.rows, t.cols + 1);
        for i in 0..t.rows {
            for j in 0..t.cols {
                aug.set(i, j, t.get(i, j).clone());
            }
            aug.set(i, t.cols, b[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&t.cols) {
            return None;
        }
        let mut x = vec![Q::zero(); t.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r.get(i, t.cols).clone();
        }
        Some(x)
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> Q {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.clone();
        let n = self.rows;
        let mut det = Q::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Q::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det *= &piv;
            let inv = piv.recip();
            for i in c + 1..n {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c) * &inv;
                for j in c..n {
                    let sub = m.get(c, j) * &f;
                    if !sub.is_zero() {
                        let idx = i * n + j;
                        m.data[idx] -= sub;
                    }
                }
            }
        }
        det
    }

    /// Inverse by Gauss-Jordan elimination; `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        let n = self.rows;
        assert_eq!(n, self.cols, "inverse of a non-square matrix");
        if n == 0 {
            return Some(Matrix::zeros(0, 0));
        }
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Q::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }
}

/// Incrementally maintained reduced echelon basis of a row space.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    dim: usize,
    rows: Vec<Vec<Q>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon { dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[Vec<Q>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Remainder of `v` after elimination against the stored rows.
    pub fn reduce(&self, v: &[Q]) -> Vec<Q> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= r * &f;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Inserts `v`; returns false when `v` already lies in the span.
    pub fn insert(&mut self, v: &[Q]) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].recip();
        for x in r.iter_mut() {
            *x *= &inv;
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(&r) {
                if !y.is_zero() {
                    *x -= y * &f;
                }
            }
        }
        self.rows.push(r);
        self.pivots.push(p);
        true
    }

    /// Coordinates of `v` in terms of the stored rows, if `v` is in the span.
    pub fn coordinates(&self, v: &[Q]) -> Option<Vec<Q>> {
        let coords: Vec<Q> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rem = v.to_vec();
        for (row, c) in self.rows.iter().zip(&coords) {
            if c.is_zero() {
                continue;
            }
            for (x, r) in rem.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= r * c;
                }
            }
        }
        rem.iter().all(Zero::is_zero).then_some(coords)
    }

    /// Positions not used as pivots, in increasing order.
    pub fn non_pivots(&self) -> Vec<usize> {
        (0..self.dim).filter(|c| !self.pivots.contains(c)).collect()
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_rows(self.rows.clone(), self.dim)
    }
}

/// Basis of the intersection of two row spaces given by generating rows.
pub fn intersect_spaces(a: &[Vec<Q>], b: &[Vec<Q>], dim: usize) -> Vec<Vec<Q>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    // x*A = y*B  <=>  (x, -y) in left kernel of [A; B].
    let mut stacked = a.to_vec();
    stacked.extend(b.iter().cloned());
    let m = Matrix::from_rows(stacked, dim);
    let mut ech = Echelon::new(dim);
    for k in m.left_nullspace() {
        let mut v = vec![Q::zero(); dim];
        for (i, row) in a.iter().enumerate() {
            if k[i].is_zero() {
                continue;
            }
            for (x, r) in v.iter_mut().zip(row) {
                *x += r * &k[i];
            }
        }
        ech.insert(&v);
    }
    ech.rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qf};

    fn m(rows: &[&[i64]]) -> Matrix {
        let cols = rows[0].len();
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect(), cols)
    }

    #[test]
    fn rank_det_nullspace() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        assert_eq!(a.det(), q(0));
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        let col = Matrix::from_rows(vec![ns[0].clone()], 3).transpose();
        assert!(a.mul(&col).is_zero());
        let b = m(&[&[2, 1], &[1, 1]]);
        assert_eq!(b.det(), q(1));
    }

    #[test]
    fn solve_left_and_echelon() {
        let a = m(&[&[1, 1], &[0, 2]]);
        let x = a.solve_left(&[q(1), q(3)]).unwrap();
        assert_eq!(a.apply(&x), vec![q(1), q(3)]);
        let mut e = Echelon::new(3);
        assert!(e.insert(&[q(1), q(2), q(0)]));
        assert!(!e.insert(&[q(2), q(4), q(0)]));
        assert!(e.insert(&[q(0), q(1), q(1)]));
        let c = e.coordinates(&[q(1), q(3), q(1)]).unwrap();
        assert_eq!(c.len(), 2);
        assert!(e.coordinates(&[q(0), q(0), q(1)]).is_none());
        assert_eq!(qf(1, 2) + qf(1, 2), q(1));
    }

    #[test]
    fn intersection() {
        let a = vec![vec![q(1), q(0), q(0)], vec![q(0), q(1), q(0)]];
        let b = vec![vec![q(0), q(1), q(0)], vec![q(0), q(0), q(1)]];
        let i = intersect_spaces(&a, &b, 3);
        assert_eq!(i, vec![vec![q(0), q(1), q(0)]]);
    }
}
