//! Dominant eigenpair of a Hermitian positive semidefinite matrix by power
//! iteration.
//!
//! The iteration starts from the normalized all-ones vector. When the spectral
//! gap is small, the iterated operator is periodically replaced by its
//! (normalized) square, so the effective contraction factor `λ₂/λ₁` is squared
//! as well. Convergence is always judged on the residual of the original
//! matrix. After the tolerance is met a bounded number of extra sweeps push
//! the residual toward the rounding floor. The returned vector is rotated so that its largest-modulus entry is
//! real and nonnegative, which makes the result unique and reproducible.

use super::matrix::{Complex, ComplexMatrix, ONE};
use crate::error::{Error, Result};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_ITER: usize = 10_000;

/// Sweeps without convergence before the iterated operator is squared.
const SWEEPS_PER_SQUARING: usize = 16;
/// Residuals below this multiple of `‖S‖_F` are at the rounding floor.
const ROUNDOFF_FLOOR: f64 = 1e-14;
/// Once the residual meets `tol`, iteration continues toward this multiple of
/// `‖S‖_F` for at most `POLISH_SWEEPS` further sweeps.
const POLISH_TARGET: f64 = 1e-13;
const POLISH_SWEEPS: usize = 64;
/// Relative modulus difference below which phase pivots count as tied.
const PIVOT_TIE: f64 = 1e-9;
/// A start vector with `‖S x₀‖ ≤ NULL_START · ‖S‖_F` carries no dominant component.
const NULL_START: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenOptions {
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for EigenOptions {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            max_iter: DEFAULT_MAX_ITER,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair {
    pub value: f64,
    /// Unit-norm column vector.
    pub vector: ComplexMatrix,
}

pub fn top_eigenpair(s: &ComplexMatrix) -> Result<EigenPair> {
    hermitian_top_eigenpair(s, EigenOptions::default())
}

pub fn hermitian_top_eigenpair(s: &ComplexMatrix, opts: EigenOptions) -> Result<EigenPair> {
    if !s.is_square() {
        return Err(Error::Shape {
            op: "hermitian_top_eigenpair",
            lhs: s.shape(),
            rhs: s.shape(),
        });
    }
    if !s.is_finite() {
        return Err(Error::validation("non-finite entry in eigenproblem"));
    }
    let defect = s.hermitian_defect();
    if defect > 1e-10 * s.max_abs().max(1.0) {
        return Err(Error::validation(format!(
            "matrix is not Hermitian (defect {defect:e})"
        )));
    }
    if opts.max_iter == 0 || !(opts.tol > 0.0) {
        return Err(Error::validation("eigen options need tol > 0 and max_iter >= 1"));
    }

    let n = s.rows();
    let norm = s.frobenius_norm();
    let ones = ComplexMatrix::column_vector(vec![Complex::new(1.0 / (n as f64).sqrt(), 0.0); n])?;
    if norm == 0.0 {
        return Ok(EigenPair {
            value: 0.0,
            vector: ones,
        });
    }
    let tol = opts.tol.max(ROUNDOFF_FLOOR * norm);
    let fine = tol.min(POLISH_TARGET * norm);
    let max_diag = (0..n).map(|i| s[(i, i)].re).fold(f64::NEG_INFINITY, f64::max);

    let starts = std::iter::once(ones).chain((0..n).map(|i| {
        let mut e = ComplexMatrix::zeros(n, 1);
        e[(i, 0)] = ONE;
        e
    }));

    let mut fallback: Option<EigenPair> = None;
    for start in starts {
        if s.matmul(&start)?.frobenius_norm() <= NULL_START * norm {
            continue;
        }
        let pair = iterate(s, start, tol, fine, opts.max_iter)?;
        // For PSD input λ₁ ≥ max diagonal entry; falling short means the start
        // was orthogonal to the dominant eigenspace.
        if pair.value + tol >= max_diag {
            return Ok(pair);
        }
        if fallback.as_ref().map_or(true, |f| pair.value > f.value) {
            fallback = Some(pair);
        }
    }
    fallback.ok_or_else(|| Error::Numerical("no start vector reached the dominant eigenspace".into()))
}

fn iterate(s: &ComplexMatrix, start: ComplexMatrix, tol: f64, fine: f64, max_iter: usize) -> Result<EigenPair> {
    let mut x = start;
    let mut op = s.clone();
    let mut stalled = 0;
    let mut residual = f64::INFINITY;
    let mut accepted: Option<(f64, f64, ComplexMatrix)> = None;
    let mut polish = 0;
    for _ in 0..max_iter {
        let y = op.matmul(&x)?;
        let ny = y.frobenius_norm();
        if ny == 0.0 || !ny.is_finite() {
            break;
        }
        x = y.scale(1.0 / ny);

        let sx = s.matmul(&x)?;
        let value = x.dot(&sx).re;
        residual = sx.sub(&x.scale(value))?.frobenius_norm();
        if residual <= tol && accepted.as_ref().map_or(true, |(r, _, _)| residual <= *r) {
            accepted = Some((residual, value, x.clone()));
        }
        if accepted.is_some() {
            polish += 1;
            if residual <= fine || polish > POLISH_SWEEPS {
                break;
            }
        }

        stalled += 1;
        if stalled == SWEEPS_PER_SQUARING {
            stalled = 0;
            let sq = op.matmul(&op)?;
            let nsq = sq.frobenius_norm();
            if nsq > 0.0 && nsq.is_finite() {
                op = sq.scale(1.0 / nsq);
                op.hermitize();
            }
        }
    }
    match accepted {
        Some((_, value, x)) => Ok(EigenPair {
            value: value.max(0.0),
            vector: fix_phase(x),
        }),
        None => Err(Error::NoConvergence {
            iterations: max_iter,
            residual,
        }),
    }
}

/// Rotates `v` so its largest-modulus entry is real and nonnegative. Entries
/// within a relative `PIVOT_TIE` of the largest count as tied and the lowest
/// index wins, so rounding noise cannot move the pivot of a constant-modulus
/// vector.
fn fix_phase(mut v: ComplexMatrix) -> ComplexMatrix {
    let largest = v.as_slice().iter().map(|z| z.norm()).fold(0.0, f64::max);
    let pivot = (0..v.rows())
        .find(|&i| v[(i, 0)].norm() >= largest * (1.0 - PIVOT_TIE))
        .unwrap_or(0);
    let best = v[(pivot, 0)].norm();
    if best > 0.0 {
        let rot = v[(pivot, 0)].conj() / best;
        for i in 0..v.rows() {
            v[(i, 0)] *= rot;
        }
        v[(pivot, 0)] = Complex::new(best, 0.0);
    }
    let norm = v.frobenius_norm();
    if norm > 0.0 && norm != 1.0 {
        v = v.scale(1.0 / norm);
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_vec(v: &ComplexMatrix, expected: &[f64], tol: f64) {
        for (i, &e) in expected.iter().enumerate() {
            assert!((v[(i, 0)] - Complex::new(e, 0.0)).norm() < tol, "{v:?}");
        }
    }

    #[test]
    fn diagonal_matrix() {
        let pair = top_eigenpair(&ComplexMatrix::diagonal(&[4.0, 1.0])).unwrap();
        assert!((pair.value - 4.0).abs() < 1e-10);
        assert_vec(&pair.vector, &[1.0, 0.0], 1e-10);
    }

    #[test]
    fn symmetric_two_by_two() {
        let s = ComplexMatrix::from_real_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let pair = top_eigenpair(&s).unwrap();
        assert!((pair.value - 3.0).abs() < 1e-12);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert_vec(&pair.vector, &[h, h], 1e-12);
    }

    #[test]
    fn start_orthogonal_to_dominant_space_restarts() {
        // all-ones is the eigenvector of the smaller eigenvalue 1
        let s = ComplexMatrix::from_real_rows(&[vec![2.0, -1.0], vec![-1.0, 2.0]]).unwrap();
        let pair = top_eigenpair(&s).unwrap();
        assert!((pair.value - 3.0).abs() < 1e-10);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert_vec(&pair.vector, &[h, -h], 1e-10);

        // all-ones in the null space
        let s = ComplexMatrix::from_real_rows(&[vec![1.0, -1.0], vec![-1.0, 1.0]]).unwrap();
        let pair = top_eigenpair(&s).unwrap();
        assert!((pair.value - 2.0).abs() < 1e-10);
    }

    #[test]
    fn scalar_matrix_keeps_start_vector() {
        let pair = top_eigenpair(&ComplexMatrix::identity(3).scale(5.0)).unwrap();
        assert!((pair.value - 5.0).abs() < 1e-14);
        let third = 1.0 / 3f64.sqrt();
        assert_vec(&pair.vector, &[third, third, third], 1e-14);
    }

    #[test]
    fn zero_matrix() {
        let pair = top_eigenpair(&ComplexMatrix::zeros(2, 2)).unwrap();
        assert_eq!(pair.value, 0.0);
        assert!((pair.vector.frobenius_norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn phase_convention_on_complex_vector() {
        // eigenvector of the top eigenvalue is proportional to [1, j]
        let s = ComplexMatrix::from_rows(&[
            vec![Complex::new(1.0, 0.0), Complex::new(0.0, -1.0)],
            vec![Complex::new(0.0, 1.0), Complex::new(1.0, 0.0)],
        ])
        .unwrap();
        let pair = top_eigenpair(&s).unwrap();
        assert!((pair.value - 2.0).abs() < 1e-12);
        assert_eq!(pair.vector[(0, 0)].im, 0.0);
        assert!(pair.vector[(0, 0)].re > 0.0);
        assert!((pair.vector[(1, 0)] - Complex::new(0.0, std::f64::consts::FRAC_1_SQRT_2)).norm() < 1e-12);
    }

    #[test]
    fn rejects_non_hermitian() {
        let s = ComplexMatrix::from_real_rows(&[vec![1.0, 2.0], vec![0.0, 1.0]]).unwrap();
        let err = top_eigenpair(&s).unwrap_err();
        assert!(matches!(err, Error::Validation(_)));
        assert!(top_eigenpair(&ComplexMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn reports_non_convergence() {
        let s = ComplexMatrix::from_real_rows(&[vec![1.0, 0.3], vec![0.3, 0.9]]).unwrap();
        let opts = EigenOptions { tol: 1e-14, max_iter: 2 };
        match hermitian_top_eigenpair(&s, opts).unwrap_err() {
            Error::NoConvergence { iterations, residual } => {
                assert_eq!(iterations, 2);
                assert!(residual > 1e-14 && residual.is_finite());
            }
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn near_tied_moduli_pivot_on_lowest_index() {
        let v = ComplexMatrix::column_vector(vec![
            Complex::from_polar(0.5 * (1.0 - 1e-13), 0.3),
            Complex::from_polar(0.5, 1.2),
            Complex::from_polar(0.5, -2.0),
            Complex::from_polar(0.5, 2.5),
        ])
        .unwrap();
        let fixed = fix_phase(v);
        assert_eq!(fixed[(0, 0)].im, 0.0);
        assert!(fixed[(0, 0)].re > 0.0);
    }
}
