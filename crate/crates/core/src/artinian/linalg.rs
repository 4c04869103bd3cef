//! Dense matrices over a prime field with Gaussian elimination.

use crate::algebra::{Coeff, PrimeField};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Coeff>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix whose rows are the given vectors (all of length `cols`).
    pub fn from_rows(rows: &[Vec<Coeff>], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols);
            m.data[i * cols..(i + 1) * cols].copy_from_slice(r);
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(cols: &[Vec<Coeff>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, &v) in c.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Coeff {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Coeff) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Coeff] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Coeff> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, f: &PrimeField, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        let v = f.add(out.get(i, j), f.mul(a, b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, f: &PrimeField, v: &[Coeff]) -> Vec<Coeff> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![0; self.rows];
        for (j, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = self.get(i, j);
                if a != 0 {
                    *o = f.add(*o, f.mul(a, c));
                }
            }
        }
        out
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self, f: &PrimeField) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.get(i, c) != 0) else { continue };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = f.inv(self.get(r, c));
            if inv != 1 {
                for j in c..self.cols {
                    let v = f.mul(self.get(r, j), inv);
                    self.set(r, j, v);
                }
            }
            let pivot_row: Vec<(usize, Coeff)> =
                (c..self.cols).filter(|&j| self.get(r, j) != 0).map(|j| (j, self.get(r, j))).collect();
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c);
                if factor == 0 {
                    continue;
                }
                let neg = f.neg(factor);
                for &(j, v) in &pivot_row {
                    let x = f.add(self.get(i, j), f.mul(neg, v));
                    self.set(i, j, x);
                }
            }
            pivots.push(c);
            r += 1;
        }
        self.data.truncate(r * self.cols);
        self.rows = r;
        pivots
    }

    pub fn rank(&self, f: &PrimeField) -> usize {
        self.clone().rref(f).len()
    }

    /// Basis of `{ v : A v = 0 }`, one vector per free column.
    pub fn nullspace(&self, f: &PrimeField) -> Vec<Vec<Coeff>> {
        let mut m = self.clone();
        let pivots = m.rref(f);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0; self.cols];
            v[free] = 1;
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(m.get(r, free));
            }
            basis.push(v);
        }
        basis
    }
}

/// A subspace kept as RREF rows; coordinates of members are read off at the pivots.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    pub rows: Matrix,
    pub pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new(f: &PrimeField, vectors: &[Vec<Coeff>], ambient: usize) -> Self {
        let mut rows = Matrix::from_rows(vectors, ambient);
        let pivots = rows.rref(f);
        Self { rows, pivots }
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn rows_iter(&self) -> impl Iterator<Item = &[Coeff]> {
        (0..self.rows.rows()).map(move |i| self.rows.row(i))
    }

    /// Coordinates of a vector known to lie in the subspace.
    pub fn coordinates(&self, v: &[Coeff]) -> Vec<Coeff> {
        self.pivots.iter().map(|&p| v[p]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_nullspace() {
        let f = PrimeField::new(7).unwrap();
        let m = Matrix::from_rows(&[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]], 3);
        assert_eq!(m.rank(&f), 2);
        let ns = m.nullspace(&f);
        assert_eq!(ns.len(), 1);
        assert!(m.apply(&f, &ns[0]).iter().all(|&x| x == 0));
    }

    #[test]
    fn echelon_coordinates() {
        let f = PrimeField::new(5).unwrap();
        let b = EchelonBasis::new(&f, &[vec![1, 1, 0], vec![0, 1, 1]], 3);
        let v = vec![2, 3, 1];
        let c = b.coordinates(&v);
        let mut w = vec![0; 3];
        for (k, &ck) in c.iter().enumerate() {
            for j in 0..3 {
                w[j] = f.add(w[j], f.mul(ck, b.rows.get(k, j)));
            }
        }
        assert_eq!(w, v);
    }
}
