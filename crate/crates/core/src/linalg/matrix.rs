use std::fmt;
use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type Complex = Complex64;

pub(crate) const ZERO: Complex = Complex::new(0.0, 0.0);
pub(crate) const ONE: Complex = Complex::new(1.0, 0.0);

/// Dense row-major complex matrix. Column vectors are `n x 1` matrices.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    /// Builds a matrix from row-major entries, rejecting wrong lengths and
    /// non-finite values.
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<Complex>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::validation(format!("empty matrix shape {rows}x{cols}")));
        }
        if data.len() != rows * cols {
            return Err(Error::validation(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(pos) = data.iter().position(|z| !z.is_finite()) {
            return Err(Error::validation(format!(
                "non-finite entry at ({}, {})",
                pos / cols,
                pos % cols
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<Complex>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::validation("ragged rows"));
        }
        Self::from_row_major(rows.len(), cols, rows.concat())
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let rows: Vec<Vec<Complex>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn column_vector(entries: Vec<Complex>) -> Result<Self> {
        Self::from_row_major(entries.len(), 1, entries)
    }

    pub fn diagonal(entries: &[f64]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &x) in entries.iter().enumerate() {
            m[(i, i)] = Complex::new(x, 0.0);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[Complex] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> ComplexMatrix {
        let data = (0..self.rows).map(|r| self[(r, c)]).collect();
        Self {
            rows: self.rows,
            cols: 1,
            data,
        }
    }

    /// Columns `start..end` as a new matrix.
    pub fn column_block(&self, start: usize, end: usize) -> ComplexMatrix {
        assert!(start < end && end <= self.cols, "column block out of range");
        let mut out = Self::zeros(self.rows, end - start);
        for r in 0..self.rows {
            out.data[r * out.cols..(r + 1) * out.cols]
                .copy_from_slice(&self.data[r * self.cols + start..r * self.cols + end]);
        }
        out
    }

    /// Square sub-block `[start, start + size)` on both axes.
    pub fn diagonal_block(&self, start: usize, size: usize) -> ComplexMatrix {
        let mut out = Self::zeros(size, size);
        for r in 0..size {
            for c in 0..size {
                out[(r, c)] = self[(start + r, start + c)];
            }
        }
        out
    }

    /// Concatenates column vectors (or blocks) side by side.
    pub fn hstack(blocks: &[ComplexMatrix]) -> Result<ComplexMatrix> {
        let rows = blocks
            .first()
            .ok_or_else(|| Error::validation("hstack of nothing"))?
            .rows;
        if let Some(b) = blocks.iter().find(|b| b.rows != rows) {
            return Err(Error::Shape {
                op: "hstack",
                lhs: (rows, blocks[0].cols),
                rhs: b.shape(),
            });
        }
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let mut offset = 0;
        for b in blocks {
            for r in 0..rows {
                for c in 0..b.cols {
                    out[(r, offset + c)] = b[(r, c)];
                }
            }
            offset += b.cols;
        }
        Ok(out)
    }

    pub fn matmul(&self, rhs: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Shape {
                op: "matmul",
                lhs: self.shape(),
                rhs: rhs.shape(),
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
            for (k, &a) in self.row(i).iter().enumerate() {
                if a == ZERO {
                    continue;
                }
                for (o, &b) in out_row.iter_mut().zip(rhs.row(k)) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    /// `selfᴴ · rhs` without materializing the conjugate transpose.
    pub fn adjoint_matmul(&self, rhs: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.rows != rhs.rows {
            return Err(Error::Shape {
                op: "adjoint_matmul",
                lhs: (self.cols, self.rows),
                rhs: rhs.shape(),
            });
        }
        let mut out = Self::zeros(self.cols, rhs.cols);
        for k in 0..self.rows {
            let rhs_row = rhs.row(k);
            for (i, a) in self.row(k).iter().enumerate() {
                let a = a.conj();
                if a == ZERO {
                    continue;
                }
                let out_row = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (o, &b) in out_row.iter_mut().zip(rhs_row) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn conj_transpose(&self) -> ComplexMatrix {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[(c, r)] = self[(r, c)].conj();
            }
        }
        out
    }

    pub fn scale(&self, factor: f64) -> ComplexMatrix {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn add(&self, rhs: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.zip_with(rhs, "add", |a, b| a + b)
    }

    pub fn sub(&self, rhs: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.zip_with(rhs, "sub", |a, b| a - b)
    }

    fn zip_with(
        &self,
        rhs: &ComplexMatrix,
        op: &'static str,
        f: impl Fn(Complex, Complex) -> Complex,
    ) -> Result<ComplexMatrix> {
        if self.shape() != rhs.shape() {
            return Err(Error::Shape {
                op,
                lhs: self.shape(),
                rhs: rhs.shape(),
            });
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(Complex::norm_sqr).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Inner product `selfᴴ · rhs` of two column vectors.
    pub fn dot(&self, rhs: &ComplexMatrix) -> Complex {
        debug_assert!(self.cols == 1 && rhs.cols == 1 && self.rows == rhs.rows);
        self.data.iter().zip(&rhs.data).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.is_finite())
    }

    /// Largest entrywise deviation from Hermitian symmetry.
    pub fn hermitian_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for r in 0..self.rows {
            for c in r..self.cols {
                worst = worst.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        worst
    }

    /// Replaces the matrix by `(A + Aᴴ) / 2`, removing rounding asymmetry.
    pub(crate) fn hermitize(&mut self) {
        for r in 0..self.rows {
            self[(r, r)].im = 0.0;
            for c in r + 1..self.cols {
                let avg = (self[(r, c)] + self[(c, r)].conj()) * 0.5;
                self[(r, c)] = avg;
                self[(c, r)] = avg.conj();
            }
        }
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex;

    fn index(&self, (r, c): (usize, usize)) -> &Complex {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for z in self.row(r) {
                write!(f, "{:+.6}{:+.6}j ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn identity_times_a_is_a() {
        let a = ComplexMatrix::from_rows(&[
            vec![c(1.0, 2.0), c(-3.0, 0.5), c(0.0, 1.0)],
            vec![c(4.0, -1.0), c(2.0, 2.0), c(-1.0, 0.0)],
        ])
        .unwrap();
        assert_eq!(ComplexMatrix::identity(2).matmul(&a).unwrap(), a);
    }

    #[test]
    fn j_squared_is_minus_one() {
        let a = ComplexMatrix::from_rows(&[vec![c(1.0, 0.0), c(0.0, 1.0)], vec![ZERO, ONE]]).unwrap();
        let b = ComplexMatrix::column_vector(vec![ONE, c(0.0, 1.0)]).unwrap();
        let out = a.matmul(&b).unwrap();
        assert_eq!(out, ComplexMatrix::column_vector(vec![ZERO, c(0.0, 1.0)]).unwrap());
    }

    #[test]
    fn matmul_shape_error_names_both_shapes() {
        let err = ComplexMatrix::zeros(2, 3).matmul(&ComplexMatrix::zeros(2, 3)).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("(2, 3)"), "{msg}");
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn conj_transpose_basics() {
        let a = ComplexMatrix::column_vector(vec![c(1.0, 1.0)]).unwrap();
        assert_eq!(a.conj_transpose()[(0, 0)], c(1.0, -1.0));
        let d = ComplexMatrix::diagonal(&[1.5, -2.0, 3.0]);
        assert_eq!(d.conj_transpose(), d);
    }

    #[test]
    fn adjoint_matmul_matches_explicit() {
        let a = ComplexMatrix::from_rows(&[
            vec![c(1.0, 2.0), c(-3.0, 0.5)],
            vec![c(4.0, -1.0), c(2.0, 2.0)],
            vec![c(0.3, 0.0), c(0.0, -1.0)],
        ])
        .unwrap();
        let explicit = a.conj_transpose().matmul(&a).unwrap();
        assert_eq!(a.adjoint_matmul(&a).unwrap(), explicit);
    }

    #[test]
    fn rejects_bad_construction() {
        assert!(ComplexMatrix::from_row_major(2, 2, vec![ONE; 3]).is_err());
        assert!(ComplexMatrix::from_row_major(1, 1, vec![c(f64::NAN, 0.0)]).is_err());
        assert!(ComplexMatrix::from_row_major(0, 1, vec![]).is_err());
    }

    #[test]
    fn hermitize_removes_asymmetry() {
        let mut a = ComplexMatrix::from_rows(&[vec![c(2.0, 1e-12), c(1.0, 1.0)], vec![c(1.0, -0.9), c(3.0, 0.0)]])
            .unwrap();
        assert!(a.hermitian_defect() > 0.05);
        a.hermitize();
        assert_eq!(a.hermitian_defect(), 0.0);
        assert_eq!(a[(0, 1)], c(1.0, 0.95));
    }
}
