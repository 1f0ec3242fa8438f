//! Cholesky factorization of Hermitian positive definite matrices, used for
//! linear solves and log-determinants without ever forming an inverse or a
//! raw determinant.

use super::matrix::{Complex, ComplexMatrix, ZERO};
use crate::error::{Error, Result};

/// Lower-triangular factor `L` with `A = L Lᴴ` and a real positive diagonal.
#[derive(Debug, Clone)]
pub struct Cholesky {
    factor: ComplexMatrix,
}

impl Cholesky {
    /// Factorizes `a`. Only the lower triangle is read; the caller guarantees
    /// the matrix is Hermitian.
    pub fn new(a: &ComplexMatrix) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::Shape {
                op: "cholesky",
                lhs: a.shape(),
                rhs: a.shape(),
            });
        }
        let n = a.rows();
        let mut l = ComplexMatrix::zeros(n, n);
        for j in 0..n {
            let mut diag = a[(j, j)].re;
            for k in 0..j {
                diag -= l[(j, k)].norm_sqr();
            }
            if !(diag > 0.0) || !diag.is_finite() {
                return Err(Error::NotPositiveDefinite { pivot: j, value: diag });
            }
            let ljj = diag.sqrt();
            l[(j, j)] = Complex::new(ljj, 0.0);
            for i in j + 1..n {
                let mut s = a[(i, j)];
                for k in 0..j {
                    s -= l[(i, k)] * l[(j, k)].conj();
                }
                l[(i, j)] = s / ljj;
            }
        }
        Ok(Self { factor: l })
    }

    pub fn factor(&self) -> &ComplexMatrix {
        &self.factor
    }

    pub fn dim(&self) -> usize {
        self.factor.rows()
    }

    /// Solves `A X = B` by forward then backward substitution.
    pub fn solve(&self, b: &ComplexMatrix) -> Result<ComplexMatrix> {
        let n = self.dim();
        if b.rows() != n {
            return Err(Error::Shape {
                op: "solve_hpd",
                lhs: (n, n),
                rhs: b.shape(),
            });
        }
        let l = &self.factor;
        let mut x = b.clone();
        for col in 0..b.cols() {
            // L y = b
            for i in 0..n {
                let mut s = x[(i, col)];
                for k in 0..i {
                    s -= l[(i, k)] * x[(k, col)];
                }
                x[(i, col)] = s / l[(i, i)].re;
            }
            // Lᴴ x = y
            for i in (0..n).rev() {
                let mut s = x[(i, col)];
                for k in i + 1..n {
                    s -= l[(k, i)].conj() * x[(k, col)];
                }
                x[(i, col)] = s / l[(i, i)].re;
            }
        }
        Ok(x)
    }

    /// `yᴴ A⁻¹ y` for a column vector `y`, via a single forward substitution.
    pub fn inverse_quadratic_form(&self, y: &ComplexMatrix) -> Result<f64> {
        let n = self.dim();
        if y.rows() != n || y.cols() != 1 {
            return Err(Error::Shape {
                op: "inverse_quadratic_form",
                lhs: (n, n),
                rhs: y.shape(),
            });
        }
        let l = &self.factor;
        let mut z = vec![ZERO; n];
        let mut total = 0.0;
        for i in 0..n {
            let mut s = y[(i, 0)];
            for k in 0..i {
                s -= l[(i, k)] * z[k];
            }
            z[i] = s / l[(i, i)].re;
            total += z[i].norm_sqr();
        }
        Ok(total)
    }

    pub fn logdet2(&self) -> f64 {
        2.0 * (0..self.dim()).map(|i| self.factor[(i, i)].re.log2()).sum::<f64>()
    }
}

/// Solves `a X = b` for Hermitian positive definite `a`.
pub fn solve_hpd(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    if a.rows() != b.rows() {
        return Err(Error::Shape {
            op: "solve_hpd",
            lhs: a.shape(),
            rhs: b.shape(),
        });
    }
    Cholesky::new(a)?.solve(b)
}

/// `log₂ det(a)` for Hermitian positive definite `a`, as twice the sum of the
/// log Cholesky pivots.
pub fn logdet2_hpd(a: &ComplexMatrix) -> Result<f64> {
    Ok(Cholesky::new(a)?.logdet2())
}
