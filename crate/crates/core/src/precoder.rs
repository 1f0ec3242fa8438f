//! Sub-array precoder design by successive interference cancellation.
//!
//! All three schemes share one loop over the sub-arrays in index order. At
//! step `m` the columns fixed so far enter `T = I_K + snr·H P Pᴴ Hᴴ`, the
//! effective Gram matrix `G = Hᴴ T⁻¹ H` is restricted to the `M × M` diagonal
//! block `S` of sub-array `m`, and the dominant eigenvector `v₁` of `S` is
//! turned into that sub-array's column:
//!
//! * [`SchemeId::HybridSic`]: phases of `v₁` on the phase shifters, the
//!   least-squares real gain `Σ|v₁[k]| / M` on the RF chain.
//! * [`SchemeId::OptimalUnconstrained`]: `v₁` itself (no hardware constraint).
//! * [`SchemeId::AnalogPhaseOnly`]: phases of `v₁` with the gain pinned to `1/√M`.
//!
//! Only the diagonal block of `G` is needed, so the loop forms
//! `S = H_mᴴ T⁻¹ H_m` from the `K × M` slice `H_m` instead of the full
//! `NM × NM` matrix; [`update_g`] and [`extract_submatrix`] expose the full
//! construction.

use std::fmt;
use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use crate::capacity::{add_rank_one, check_snr, interference_matrix};
use crate::channel::append_entries;
use crate::error::{Error, Result};
use crate::io::{fmt_f64, write_file};
use crate::linalg::{solve_hpd, top_eigenpair, Cholesky, Complex, ComplexMatrix, EigenPair, ONE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SchemeId {
    HybridSic,
    OptimalUnconstrained,
    AnalogPhaseOnly,
}

impl SchemeId {
    pub const ALL: [SchemeId; 3] = [
        SchemeId::HybridSic,
        SchemeId::OptimalUnconstrained,
        SchemeId::AnalogPhaseOnly,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SchemeId::HybridSic => "hybrid-sic",
            SchemeId::OptimalUnconstrained => "optimal",
            SchemeId::AnalogPhaseOnly => "analog-phase",
        }
    }
}

impl fmt::Display for SchemeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SchemeId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SchemeId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::validation(format!("unknown scheme '{s}'")))
    }
}

/// Block-diagonal analog stage `A` (phase shifters) times a real diagonal
/// digital stage `D`.
#[derive(Debug, Clone, PartialEq)]
pub struct HybridPrecoder {
    /// `a_m`, one `M × 1` unit-modulus vector per sub-array.
    pub analog_columns: Vec<ComplexMatrix>,
    /// `d_{m,m}`, one nonnegative gain per sub-array.
    pub digital_gains: Vec<f64>,
    /// `P = A D`, shape `NM × N`.
    pub assembled: ComplexMatrix,
}

impl HybridPrecoder {
    pub fn new(analog_columns: Vec<ComplexMatrix>, digital_gains: Vec<f64>) -> Result<Self> {
        let n = analog_columns.len();
        if n == 0 || digital_gains.len() != n {
            return Err(Error::validation(format!(
                "{n} analog columns with {} digital gains",
                digital_gains.len()
            )));
        }
        let m = analog_columns[0].rows();
        for a in &analog_columns {
            if a.shape() != (m, 1) {
                return Err(Error::validation("analog columns must share one M x 1 shape"));
            }
            if a.as_slice().iter().any(|z| (z.norm() - 1.0).abs() > 1e-12) {
                return Err(Error::validation("analog entries must have unit modulus"));
            }
        }
        if digital_gains.iter().any(|d| !(*d >= 0.0) || !d.is_finite()) {
            return Err(Error::validation("digital gains must be finite and nonnegative"));
        }
        let blocks: Vec<ComplexMatrix> = analog_columns
            .iter()
            .zip(&digital_gains)
            .map(|(a, &d)| a.scale(d))
            .collect();
        let assembled = assemble_blocks(&blocks)?;
        Ok(Self {
            analog_columns,
            digital_gains,
            assembled,
        })
    }

    pub fn n_rf(&self) -> usize {
        self.analog_columns.len()
    }

    pub fn m_per_rf(&self) -> usize {
        self.analog_columns[0].rows()
    }

    /// The `NM × N` analog matrix `A`.
    pub fn analog_matrix(&self) -> ComplexMatrix {
        assemble_blocks(&self.analog_columns).expect("shapes checked at construction")
    }

    pub fn columns(&self) -> Vec<ComplexMatrix> {
        (0..self.n_rf()).map(|c| self.assembled.column(c)).collect()
    }
}

/// Output of any of the three schemes.
#[derive(Debug, Clone, PartialEq)]
pub enum Precoder {
    Hybrid(HybridPrecoder),
    /// Block-sparse columns without the constant-modulus constraint.
    Unconstrained(ComplexMatrix),
}

impl Precoder {
    pub fn assembled(&self) -> &ComplexMatrix {
        match self {
            Precoder::Hybrid(p) => &p.assembled,
            Precoder::Unconstrained(p) => p,
        }
    }

    pub fn columns(&self) -> Vec<ComplexMatrix> {
        let p = self.assembled();
        (0..p.cols()).map(|c| p.column(c)).collect()
    }

    /// `[analog]`, `[digital]` and `[assembled]` sections. Unconstrained
    /// precoders have no analog/digital split, so those sections carry only
    /// their header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("[analog]\nrow,col,re,im\n");
        if let Precoder::Hybrid(p) = self {
            append_entries(&mut out, &p.analog_matrix());
        }
        out.push_str("[digital]\nindex,gain\n");
        if let Precoder::Hybrid(p) = self {
            for (i, d) in p.digital_gains.iter().enumerate() {
                let _ = writeln!(out, "{i},{}", fmt_f64(*d));
            }
        }
        out.push_str("[assembled]\nrow,col,re,im\n");
        append_entries(&mut out, self.assembled());
        out
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        write_file(path, &self.to_csv())
    }
}

/// Places the `M × 1` block of sub-array `index` (0-based) into an `NM × 1` column.
pub fn embed_block(block: &ComplexMatrix, index: usize, n: usize) -> ComplexMatrix {
    let m = block.rows();
    let mut col = ComplexMatrix::zeros(n * m, 1);
    for k in 0..m {
        col[(index * m + k, 0)] = block[(k, 0)];
    }
    col
}

/// Block-diagonal `NM × N` matrix with `blocks[i]` on diagonal block `i`.
fn assemble_blocks(blocks: &[ComplexMatrix]) -> Result<ComplexMatrix> {
    let n = blocks.len();
    let cols: Vec<ComplexMatrix> = blocks
        .iter()
        .enumerate()
        .map(|(i, b)| embed_block(b, i, n))
        .collect();
    ComplexMatrix::hstack(&cols)
}

/// `G = Hᴴ T⁻¹ H` with `T = I_K + snr · H P Pᴴ Hᴴ` for the prefix columns `P`.
/// With an empty prefix this is `HᴴH`.
pub fn update_g(h: &ComplexMatrix, p_prefix: &[ComplexMatrix], snr: f64) -> Result<ComplexMatrix> {
    check_snr(snr)?;
    if let Some(p) = p_prefix.iter().find(|p| p.shape() != (h.cols(), 1)) {
        return Err(Error::Shape {
            op: "update_g",
            lhs: h.shape(),
            rhs: p.shape(),
        });
    }
    let t = interference_matrix(h, p_prefix, snr)?;
    let t_inv_h = solve_hpd(&t, h)?;
    h.adjoint_matmul(&t_inv_h)
}

/// Diagonal `M × M` block of `g` belonging to sub-array `m_index` (1-based).
pub fn extract_submatrix(g: &ComplexMatrix, m_index: usize, m: usize) -> Result<ComplexMatrix> {
    if !g.is_square() || m == 0 || g.rows() % m != 0 {
        return Err(Error::validation(format!(
            "cannot split a {:?} matrix into {m} x {m} blocks",
            g.shape()
        )));
    }
    let n = g.rows() / m;
    if m_index == 0 || m_index > n {
        return Err(Error::validation(format!("sub-array index {m_index} outside 1..={n}")));
    }
    Ok(g.diagonal_block((m_index - 1) * m, m))
}

/// Closest constant-modulus approximation `d · a` of a unit vector: `a` keeps
/// the phases of `v1` (zero entries map to phase 0) and `d = Σ|v1[k]| / M`.
pub fn quantize_to_hybrid(v1: &ComplexMatrix) -> Result<(ComplexMatrix, f64)> {
    if v1.cols() != 1 {
        return Err(Error::validation(format!("expected a column vector, got {:?}", v1.shape())));
    }
    let norm = v1.frobenius_norm();
    if norm == 0.0 {
        return Err(Error::validation("cannot quantize the zero vector"));
    }
    if (norm - 1.0).abs() > 1e-10 {
        return Err(Error::validation(format!("expected a unit vector, norm is {norm}")));
    }
    let m = v1.rows();
    let mut magnitude_sum = 0.0;
    let phases = v1
        .as_slice()
        .iter()
        .map(|z| {
            let r = z.norm();
            magnitude_sum += r;
            if r == 0.0 {
                ONE
            } else {
                Complex::from_polar(1.0, z.arg())
            }
        })
        .collect();
    Ok((ComplexMatrix::column_vector(phases)?, magnitude_sum / m as f64))
}

/// Runs the SIC loop, turning each step's dominant eigenpair into the
/// sub-array's `M × 1` block via `column_from`.
fn sic_loop<F>(h: &ComplexMatrix, n: usize, m: usize, snr: f64, mut column_from: F) -> Result<()>
where
    F: FnMut(usize, &EigenPair) -> Result<ComplexMatrix>,
{
    check_snr(snr)?;
    if n == 0 || m == 0 || h.cols() != n * m {
        return Err(Error::Shape {
            op: "sic precoder",
            lhs: h.shape(),
            rhs: (n, m),
        });
    }
    let mut t = ComplexMatrix::identity(h.rows());
    for idx in 0..n {
        let h_block = h.column_block(idx * m, (idx + 1) * m);
        let chol = Cholesky::new(&t).map_err(|e| e.at_sub_array(idx + 1))?;
        let mut s = h_block.adjoint_matmul(&chol.solve(&h_block)?)?;
        s.hermitize();
        let pair = top_eigenpair(&s).map_err(|e| e.at_sub_array(idx + 1))?;
        let block = column_from(idx, &pair).map_err(|e| e.at_sub_array(idx + 1))?;
        add_rank_one(&mut t, &h_block.matmul(&block)?, snr);
    }
    Ok(())
}

pub fn sic_hybrid_precoder(h: &ComplexMatrix, n: usize, m: usize, snr: f64) -> Result<HybridPrecoder> {
    let mut analog = Vec::with_capacity(n);
    let mut gains = Vec::with_capacity(n);
    sic_loop(h, n, m, snr, |_, pair| {
        let (a, d) = quantize_to_hybrid(&pair.vector)?;
        let block = a.scale(d);
        analog.push(a);
        gains.push(d);
        Ok(block)
    })?;
    HybridPrecoder::new(analog, gains)
}

/// Unconstrained benchmark: each sub-array transmits `v₁` of its step directly.
pub fn optimal_greedy_precoder(h: &ComplexMatrix, n: usize, m: usize, snr: f64) -> Result<Vec<ComplexMatrix>> {
    let mut columns = Vec::with_capacity(n);
    sic_loop(h, n, m, snr, |idx, pair| {
        columns.push(embed_block(&pair.vector, idx, n));
        Ok(pair.vector.clone())
    })?;
    Ok(columns)
}

/// Phase-only baseline: the phases of `v₁` with a fixed gain of `1/√M`.
pub fn analog_phase_precoder(h: &ComplexMatrix, n: usize, m: usize, snr: f64) -> Result<HybridPrecoder> {
    let gain = 1.0 / (m as f64).sqrt();
    let mut analog = Vec::with_capacity(n);
    sic_loop(h, n, m, snr, |_, pair| {
        let (a, _) = quantize_to_hybrid(&pair.vector)?;
        let block = a.scale(gain);
        analog.push(a);
        Ok(block)
    })?;
    HybridPrecoder::new(analog, vec![gain; n])
}

pub fn design(scheme: SchemeId, h: &ComplexMatrix, n: usize, m: usize, snr: f64) -> Result<Precoder> {
    Ok(match scheme {
        SchemeId::HybridSic => Precoder::Hybrid(sic_hybrid_precoder(h, n, m, snr)?),
        SchemeId::AnalogPhaseOnly => Precoder::Hybrid(analog_phase_precoder(h, n, m, snr)?),
        SchemeId::OptimalUnconstrained => {
            Precoder::Unconstrained(ComplexMatrix::hstack(&optimal_greedy_precoder(h, n, m, snr)?)?)
        }
    })
}
