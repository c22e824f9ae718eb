use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{Fq, Subspace};

/// Dense matrix over a prime field, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FqMatrix {
    field: Fq,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl fmt::Debug for FqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FqMatrix<{}>{:?}", self.field.q(), self.to_rows())
    }
}

impl FqMatrix {
    pub fn new(field: Fq, rows: usize, cols: usize, data: Vec<u8>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        if let Some(&bad) = data.iter().find(|&&x| x as u32 >= field.q()) {
            return Err(Error::Shape(format!("entry {bad} out of range mod {}", field.q())));
        }
        Ok(FqMatrix { field, rows, cols, data })
    }

    /// Builds from nested rows, reducing entries mod q. `cols` is needed for
    /// the zero-row case.
    pub fn from_rows(field: Fq, cols: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::Shape(format!("row of length {} where {cols} expected", r.len())));
            }
            data.extend(r.iter().map(|&x| field.reduce(x)));
        }
        Ok(FqMatrix { field, rows: rows.len(), cols, data })
    }

    pub fn zeros(field: Fq, rows: usize, cols: usize) -> Self {
        FqMatrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: Fq, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    #[inline]
    pub fn field(&self) -> Fq {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[u8] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u8> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul(&self, other: &FqMatrix) -> Result<Self> {
        if self.cols != other.rows || self.field != other.field {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &FqMatrix) -> Self {
        let q = self.field.q();
        let mut out = vec![0u32; self.rows * other.cols];
        for r in 0..self.rows {
            let orow = &mut out[r * other.cols..(r + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k] as u32;
                if a == 0 {
                    continue;
                }
                for (o, &b) in orow.iter_mut().zip(other.row(k)) {
                    *o += a * b as u32;
                }
            }
        }
        FqMatrix {
            field: self.field,
            rows: self.rows,
            cols: other.cols,
            data: out.into_iter().map(|x| (x % q) as u8).collect(),
        }
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &[u8]) -> Vec<u8> {
        debug_assert_eq!(v.len(), self.cols);
        let q = self.field.q();
        (0..self.rows)
            .map(|r| {
                let s: u32 = self.row(r).iter().zip(v).map(|(&a, &b)| a as u32 * b as u32).sum();
                (s % q) as u8
            })
            .collect()
    }

    pub fn add(&self, other: &FqMatrix) -> Result<Self> {
        self.zip_with(other, |f, a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &FqMatrix) -> Result<Self> {
        self.zip_with(other, |f, a, b| f.sub(a, b))
    }

    fn zip_with(&self, other: &FqMatrix, op: impl Fn(Fq, u8, u8) -> u8) -> Result<Self> {
        if self.shape() != other.shape() || self.field != other.field {
            return Err(Error::Shape(format!(
                "shapes {:?} and {:?} differ",
                self.shape(),
                other.shape()
            )));
        }
        let f = self.field;
        Ok(FqMatrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| op(f, a, b)).collect(),
        })
    }

    pub fn scale(&self, s: u8) -> Self {
        let f = self.field;
        FqMatrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul(a, s)).collect(),
        }
    }

    /// `self += s * other`, shapes assumed equal.
    pub(crate) fn add_scaled_in_place(&mut self, other: &FqMatrix, s: u8) {
        let f = self.field;
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = f.add(*a, f.mul(b, s));
        }
    }

    pub fn pow(&self, e: usize) -> Self {
        debug_assert_eq!(self.rows, self.cols);
        let mut result = Self::identity(self.field, self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        result
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &FqMatrix) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::Shape("vstack column mismatch".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(FqMatrix { field: self.field, rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Places `self` left of `other`.
    pub fn hstack(&self, other: &FqMatrix) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::Shape("hstack row mismatch".into()));
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        Ok(FqMatrix { field: self.field, rows: self.rows, cols, data })
    }

    /// Block-diagonal `diag(self, other)`.
    pub fn block_diag(&self, other: &FqMatrix) -> Self {
        let rows = self.rows + other.rows;
        let cols = self.cols + other.cols;
        let mut m = Self::zeros(self.field, rows, cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c));
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                m.set(self.rows + r, self.cols + c, other.get(r, c));
            }
        }
        m
    }

    /// Row-reduces in place to reduced row-echelon form; returns pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field;
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut prow = 0;
        for c in 0..cols {
            if prow == self.rows {
                break;
            }
            let Some(src) = (prow..self.rows).find(|&r| self.data[r * cols + c] != 0) else {
                continue;
            };
            if src != prow {
                for k in 0..cols {
                    self.data.swap(src * cols + k, prow * cols + k);
                }
            }
            let inv = f.inv(self.data[prow * cols + c]);
            if inv != 1 {
                for k in c..cols {
                    let v = &mut self.data[prow * cols + k];
                    *v = f.mul(*v, inv);
                }
            }
            for r in 0..self.rows {
                if r == prow {
                    continue;
                }
                let factor = self.data[r * cols + c];
                if factor == 0 {
                    continue;
                }
                let nf = f.neg(factor);
                for k in c..cols {
                    let p = self.data[prow * cols + k];
                    if p != 0 {
                        let v = &mut self.data[r * cols + k];
                        *v = f.add(*v, f.mul(nf, p));
                    }
                }
            }
            pivots.push(c);
            prow += 1;
        }
        pivots
    }

    /// Reduced row-echelon form (zero rows kept at the bottom).
    pub fn rref(&self) -> (FqMatrix, Vec<usize>) {
        let mut m = self.clone();
        let p = m.rref_in_place();
        (m, p)
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place().len()
    }

    /// Basis (as matrix rows) of `{x : self · x = 0}`, in RREF.
    pub fn nullspace(&self) -> FqMatrix {
        let (r, pivots) = self.rref();
        let f = self.field;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = FqMatrix::zeros(f, free.len(), self.cols);
        for (i, &fc) in free.iter().enumerate() {
            basis.set(i, fc, 1);
            for (pi, &pc) in pivots.iter().enumerate() {
                basis.set(i, pc, f.neg(r.get(pi, fc)));
            }
        }
        basis.rref_in_place();
        basis
    }

    pub fn kernel_basis(&self) -> Subspace {
        Subspace::from_rows_rref(self.nullspace())
    }

    /// Column space, as a subspace of `F^rows`.
    pub fn image_basis(&self) -> Subspace {
        Subspace::from_rows(&self.transpose())
    }

    /// Some `x` with `self · x = b`, if one exists.
    pub fn solve(&self, b: &[u8]) -> Result<Option<Vec<u8>>> {
        if b.len() != self.rows {
            return Err(Error::Shape(format!("rhs of length {} for {} rows", b.len(), self.rows)));
        }
        let col = FqMatrix::new(self.field, self.rows, 1, b.to_vec())?;
        let aug = self.hstack(&col)?;
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0u8; self.cols];
        for (pi, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(pi, self.cols);
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<FqMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&FqMatrix::identity(self.field, n)).ok()?;
        let (r, pivots) = aug.rref();
        if n > 0 && (pivots.len() < n || pivots[n - 1] != n - 1) {
            return None;
        }
        let mut inv = FqMatrix::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j));
            }
        }
        Some(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_inverse() {
        let e = FqMatrix::zeros(f2(), 0, 0);
        assert_eq!(e.inverse(), Some(e.clone()));
        assert!(e.is_invertible());
    }

    fn f2() -> Fq {
        Fq::new(2).unwrap()
    }

    #[test]
    fn rank_of_identity() {
        assert_eq!(FqMatrix::identity(f2(), 3).rank(), 3);
    }

    #[test]
    fn kernel_of_row() {
        let a = FqMatrix::from_rows(f2(), 3, &[vec![1, 1, 0]]).unwrap();
        assert_eq!(a.kernel_basis().dim(), 2);
    }

    #[test]
    fn solve_upper_triangular() {
        let a = FqMatrix::from_rows(f2(), 2, &[vec![1, 1], vec![0, 1]]).unwrap();
        assert_eq!(a.solve(&[0, 1]).unwrap(), Some(vec![1, 1]));
        let sing = FqMatrix::from_rows(f2(), 2, &[vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(sing.solve(&[0, 1]).unwrap(), None);
    }

    #[test]
    fn shape_errors() {
        let a = FqMatrix::zeros(f2(), 2, 3);
        assert!(a.mul(&a).is_err());
        assert!(a.solve(&[0]).is_err());
        assert!(FqMatrix::new(f2(), 2, 2, vec![0, 1, 2, 0]).is_err());
    }

    #[test]
    fn pow_of_nilpotent() {
        let f = Fq::new(3).unwrap();
        let j = FqMatrix::from_rows(f, 3, &[vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]]).unwrap();
        assert!(!j.pow(2).is_zero());
        assert!(j.pow(3).is_zero());
        assert_eq!(j.pow(0), FqMatrix::identity(f, 3));
    }
}
