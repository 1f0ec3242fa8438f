//! Achievable rate `log₂ det(I_K + snr · H P Pᴴ Hᴴ)` in bits/s/Hz, evaluated
//! either directly or as a telescoping sum of per-column increments
//! (matrix determinant lemma):
//!
//! `log₂ det T_N = Σ_m log₂(1 + snr · p_mᴴ Hᴴ T_{m-1}⁻¹ H p_m)`,
//! with `T_m = I_K + snr · H P(1:m) P(1:m)ᴴ Hᴴ`.

use crate::error::{Error, Result};
use crate::linalg::{logdet2_hpd, Cholesky, ComplexMatrix};

#[derive(Debug, Clone, PartialEq)]
pub struct CapacityTrace {
    /// Rate added by each column, in column order.
    pub increments: Vec<f64>,
    pub total: f64,
}

pub(crate) fn check_snr(snr: f64) -> Result<()> {
    if snr > 0.0 && snr.is_finite() {
        Ok(())
    } else {
        Err(Error::validation(format!("snr must be positive and finite, got {snr}")))
    }
}

/// `t += weight · y yᴴ` for a column vector `y`.
pub(crate) fn add_rank_one(t: &mut ComplexMatrix, y: &ComplexMatrix, weight: f64) {
    for r in 0..y.rows() {
        let yr = y[(r, 0)] * weight;
        for c in 0..y.rows() {
            t[(r, c)] += yr * y[(c, 0)].conj();
        }
    }
}

/// `T = I_K + snr · Σ (H p)(H p)ᴴ` over the given columns.
pub(crate) fn interference_matrix(h: &ComplexMatrix, prefix: &[ComplexMatrix], snr: f64) -> Result<ComplexMatrix> {
    let mut t = ComplexMatrix::identity(h.rows());
    for p in prefix {
        let hp = h.matmul(p)?;
        if hp.cols() != 1 {
            return Err(Error::validation("precoder columns must be column vectors"));
        }
        add_rank_one(&mut t, &hp, snr);
    }
    Ok(t)
}

fn log2_1p(x: f64) -> f64 {
    x.ln_1p() / std::f64::consts::LN_2
}

pub fn capacity_direct(h: &ComplexMatrix, p: &ComplexMatrix, snr: f64) -> Result<f64> {
    check_snr(snr)?;
    let hp = h.matmul(p)?;
    let mut t = hp.matmul(&hp.conj_transpose())?.scale(snr);
    for i in 0..t.rows() {
        t[(i, i)].re += 1.0;
    }
    t.hermitize();
    logdet2_hpd(&t)
}

/// `log₂(1 + snr · pᴴ g p)` for an already-formed `g = Hᴴ T⁻¹ H`.
pub fn capacity_increment(g: &ComplexMatrix, p_col: &ComplexMatrix, snr: f64) -> Result<f64> {
    check_snr(snr)?;
    if p_col.cols() != 1 {
        return Err(Error::validation(format!(
            "expected a precoder column, got {:?}",
            p_col.shape()
        )));
    }
    let q = p_col.dot(&g.matmul(p_col)?);
    if q.im.abs() > 1e-10 * q.norm() {
        return Err(Error::Numerical(format!(
            "quadratic form {q} is not real; g is not Hermitian"
        )));
    }
    Ok(log2_1p(snr * q.re))
}

/// Per-column increments for columns added in order. The quadratic form
/// `pᴴ Hᴴ T⁻¹ H p` is evaluated as `yᴴ T⁻¹ y` with `y = H p`, which keeps the
/// work in the `K`-dimensional receive space.
pub fn capacity_trace(h: &ComplexMatrix, p_cols: &[ComplexMatrix], snr: f64) -> Result<CapacityTrace> {
    check_snr(snr)?;
    let mut t = ComplexMatrix::identity(h.rows());
    let mut increments = Vec::with_capacity(p_cols.len());
    for p in p_cols {
        if p.cols() != 1 {
            return Err(Error::validation(format!(
                "expected a precoder column, got {:?}",
                p.shape()
            )));
        }
        let y = h.matmul(p)?;
        let q = Cholesky::new(&t)?.inverse_quadratic_form(&y)?;
        increments.push(log2_1p(snr * q));
        add_rank_one(&mut t, &y, snr);
    }
    let total = increments.iter().sum();
    Ok(CapacityTrace { increments, total })
}
