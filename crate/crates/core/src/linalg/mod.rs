//! Dense complex linear algebra: products, Hermitian positive definite
//! solves and log-determinants, and the dominant Hermitian eigenpair.

mod cholesky;
mod eigen;
mod matrix;

pub use cholesky::{logdet2_hpd, solve_hpd, Cholesky};
pub use eigen::{hermitian_top_eigenpair, top_eigenpair, EigenOptions, EigenPair, DEFAULT_MAX_ITER, DEFAULT_TOL};
pub use matrix::{Complex, ComplexMatrix};

pub(crate) use matrix::ONE;

/// `a · b`; fails with a shape error naming both shapes.
pub fn matmul(a: &ComplexMatrix, b: &ComplexMatrix) -> crate::Result<ComplexMatrix> {
    a.matmul(b)
}

pub fn conj_transpose(a: &ComplexMatrix) -> ComplexMatrix {
    a.conj_transpose()
}
