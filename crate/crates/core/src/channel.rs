//! Geometric Saleh-Valenzuela mmWave channel with uniform linear arrays at
//! both ends.
//!
//! A realization is a sum of `L` rank-one terms
//! `scale · α_l · f_r(aoa_l) · f_t(aod_l)ᴴ`, where `f_r` (length `K`) and
//! `f_t` (length `NM`) are unit-norm ULA steering vectors and the path gains
//! `α_l` are unit-variance circularly-symmetric complex Gaussians.

use std::f64::consts::{PI, TAU};
use std::fmt::Write as _;
use std::path::Path;

use rand::Rng;
use rand_distr::{Distribution, StandardNormal, Uniform};

use crate::error::{Error, Result};
use crate::io::{fmt_f64, write_file};
use crate::linalg::{Complex, ComplexMatrix};

/// Overall scale factor applied to the path sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Normalization {
    /// `√(NMK/L)`, giving `E‖H‖_F² = NMK`.
    #[default]
    Standard,
    /// `√(N²M/L)`, the factor as literally printed for this model.
    PaperLiteral,
}

impl std::str::FromStr for Normalization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(Normalization::Standard),
            "paper-literal" => Ok(Normalization::PaperLiteral),
            other => Err(Error::validation(format!("unknown normalization '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ArrayConfig {
    /// RF chains, one per sub-array (N).
    pub n_rf: usize,
    /// Antennas per sub-array (M).
    pub m_per_rf: usize,
    /// Receive antennas (K).
    pub k_rx: usize,
    /// Antenna spacing over wavelength, d/λ.
    pub spacing_ratio: f64,
    /// Propagation paths (L).
    pub paths: usize,
    pub tx_gain: f64,
    pub rx_gain: f64,
    pub normalization: Normalization,
}

impl ArrayConfig {
    pub fn new(n_rf: usize, m_per_rf: usize, k_rx: usize, paths: usize) -> Self {
        Self {
            n_rf,
            m_per_rf,
            k_rx,
            spacing_ratio: 0.5,
            paths,
            tx_gain: 1.0,
            rx_gain: 1.0,
            normalization: Normalization::Standard,
        }
    }

    pub fn with_normalization(mut self, normalization: Normalization) -> Self {
        self.normalization = normalization;
        self
    }

    pub fn tx_antennas(&self) -> usize {
        self.n_rf * self.m_per_rf
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_rf == 0 || self.m_per_rf == 0 || self.k_rx == 0 || self.paths == 0 {
            return Err(Error::validation(format!(
                "array counts must be positive (N={}, M={}, K={}, L={})",
                self.n_rf, self.m_per_rf, self.k_rx, self.paths
            )));
        }
        if !(self.spacing_ratio > 0.0) || !self.spacing_ratio.is_finite() {
            return Err(Error::validation(format!(
                "spacing ratio must be positive, got {}",
                self.spacing_ratio
            )));
        }
        if !self.tx_gain.is_finite() || !self.rx_gain.is_finite() {
            return Err(Error::validation("array gains must be finite"));
        }
        if self.paths > self.n_rf {
            log::warn!(
                "{} paths exceed {} RF chains; the channel is usually sparser than the RF chain count",
                self.paths,
                self.n_rf
            );
        }
        Ok(())
    }

    pub fn scale(&self) -> f64 {
        let (n, m, k, l) = (
            self.n_rf as f64,
            self.m_per_rf as f64,
            self.k_rx as f64,
            self.paths as f64,
        );
        match self.normalization {
            Normalization::Standard => (n * m * k / l).sqrt(),
            Normalization::PaperLiteral => (n * n * m / l).sqrt(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathParams {
    pub gain: Complex,
    /// Angle of departure, radians in `[0, 2π)`.
    pub aod: f64,
    /// Angle of arrival, radians in `[0, 2π)`.
    pub aoa: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChannelRealization {
    pub config: ArrayConfig,
    pub paths: Vec<PathParams>,
    /// `K × NM` channel matrix.
    pub h: ComplexMatrix,
}

/// ULA response `(1/√count) · exp(j 2π d/λ k sin θ)`, `k = 0..count`.
pub fn ula_steering(angle: f64, count: usize, spacing_ratio: f64) -> ComplexMatrix {
    let amplitude = 1.0 / (count as f64).sqrt();
    let step = 2.0 * PI * spacing_ratio * angle.sin();
    let entries = (0..count)
        .map(|k| Complex::from_polar(amplitude, step * k as f64))
        .collect();
    ComplexMatrix::column_vector(entries).expect("steering vector entries are finite")
}

/// Draws `L` paths in the order aod, aoa, Re α, Im α per path.
pub fn sample_paths<R: Rng + ?Sized>(config: &ArrayConfig, rng: &mut R) -> Vec<PathParams> {
    let angle = Uniform::new(0.0, TAU).expect("valid angle range");
    let half = std::f64::consts::FRAC_1_SQRT_2;
    (0..config.paths)
        .map(|_| {
            let aod = angle.sample(rng);
            let aoa = angle.sample(rng);
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            PathParams {
                gain: Complex::new(re * half, im * half),
                aod,
                aoa,
            }
        })
        .collect()
}

pub fn synthesize_channel(config: &ArrayConfig, paths: &[PathParams]) -> Result<ChannelRealization> {
    config.validate()?;
    if paths.len() != config.paths {
        return Err(Error::validation(format!(
            "expected {} paths, got {}",
            config.paths,
            paths.len()
        )));
    }
    if let Some(p) = paths.iter().find(|p| !p.gain.is_finite() || !p.aod.is_finite() || !p.aoa.is_finite()) {
        return Err(Error::validation(format!("non-finite path parameters {p:?}")));
    }
    let k = config.k_rx;
    let nm = config.tx_antennas();
    let scale = config.scale() * config.rx_gain * config.tx_gain;
    let mut h = ComplexMatrix::zeros(k, nm);
    for path in paths {
        let fr = ula_steering(path.aoa, k, config.spacing_ratio);
        let ft = ula_steering(path.aod, nm, config.spacing_ratio);
        let coeff = path.gain * scale;
        for r in 0..k {
            let left = coeff * fr[(r, 0)];
            for c in 0..nm {
                h[(r, c)] += left * ft[(c, 0)].conj();
            }
        }
    }
    Ok(ChannelRealization {
        config: config.clone(),
        paths: paths.to_vec(),
        h,
    })
}

pub fn sample_channel<R: Rng + ?Sized>(config: &ArrayConfig, rng: &mut R) -> Result<ChannelRealization> {
    let paths = sample_paths(config, rng);
    synthesize_channel(config, &paths)
}

/// Renders a matrix as `row,col,re,im` CSV, row-major, 0-based indices.
pub fn matrix_csv(m: &ComplexMatrix) -> String {
    let mut out = String::from("row,col,re,im\n");
    append_entries(&mut out, m);
    out
}

pub(crate) fn append_entries(out: &mut String, m: &ComplexMatrix) {
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let z = m[(r, c)];
            let _ = writeln!(out, "{r},{c},{},{}", fmt_f64(z.re), fmt_f64(z.im));
        }
    }
}

pub fn write_channel_csv(channel: &ChannelRealization, path: &Path) -> Result<()> {
    write_file(path, &matrix_csv(&channel.h))
}
