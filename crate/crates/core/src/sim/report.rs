use std::fmt;

use super::SweepResult;
use crate::error::{Error, Result};
use crate::precoder::SchemeId;

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonPoint {
    pub snr_db: f64,
    pub optimal: f64,
    pub hybrid_ratio: Option<f64>,
    pub analog_ratio: Option<f64>,
    /// Hybrid minus analog mean capacity, bits/s/Hz.
    pub hybrid_analog_gap: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub points: Vec<ComparisonPoint>,
    /// Extra SNR (dB) the hybrid scheme needs to match the optimal capacity,
    /// maximized over the overlapping capacity range.
    pub snr_gap_db: Option<f64>,
}

impl ComparisonReport {
    pub fn at(&self, snr_db: f64) -> Option<&ComparisonPoint> {
        self.points.iter().find(|p| p.snr_db == snr_db)
    }
}

pub fn compare(result: &SweepResult) -> Result<ComparisonReport> {
    let optimal = result
        .means(SchemeId::OptimalUnconstrained)
        .ok_or_else(|| Error::validation("comparison needs the optimal scheme"))?;
    let hybrid = result.means(SchemeId::HybridSic);
    let analog = result.means(SchemeId::AnalogPhaseOnly);
    if hybrid.is_none() && analog.is_none() {
        return Err(Error::validation("comparison needs a scheme besides optimal"));
    }

    let ratio = |x: f64, opt: f64| if opt > 0.0 { x / opt } else { 1.0 };
    let points = result
        .snr_db_grid
        .iter()
        .enumerate()
        .map(|(i, &snr_db)| {
            let h = hybrid.as_ref().map(|c| c[i]);
            let a = analog.as_ref().map(|c| c[i]);
            ComparisonPoint {
                snr_db,
                optimal: optimal[i],
                hybrid_ratio: h.map(|h| ratio(h, optimal[i])),
                analog_ratio: a.map(|a| ratio(a, optimal[i])),
                hybrid_analog_gap: h.zip(a).map(|(h, a)| h - a),
            }
        })
        .collect();

    let snr_gap_db = hybrid
        .as_ref()
        .and_then(|h| interpolated_snr_gap(&result.snr_db_grid, &optimal, h));
    Ok(ComparisonReport { points, snr_gap_db })
}

/// For each point of `other`, the SNR at which the piecewise-linear
/// `reference` curve reaches the same capacity; returns the largest
/// difference `snr_other − snr_reference`, or `None` when the capacity
/// ranges do not overlap.
pub fn interpolated_snr_gap(snr_db: &[f64], reference: &[f64], other: &[f64]) -> Option<f64> {
    let mut worst: Option<f64> = None;
    for (&s, &c) in snr_db.iter().zip(other) {
        let crossing = snr_db
            .windows(2)
            .zip(reference.windows(2))
            .find_map(|(s2, r2)| {
                let (lo, hi) = (r2[0].min(r2[1]), r2[0].max(r2[1]));
                if c < lo || c > hi {
                    return None;
                }
                if r2[1] == r2[0] {
                    return Some(s2[0]);
                }
                Some(s2[0] + (c - r2[0]) / (r2[1] - r2[0]) * (s2[1] - s2[0]))
            })
            .or_else(|| (reference.len() == 1 && reference[0] == c).then_some(snr_db[0]));
        if let Some(s_ref) = crossing {
            let gap = s - s_ref;
            worst = Some(worst.map_or(gap, |w: f64| w.max(gap)));
        }
    }
    worst
}

fn opt_cell(x: Option<f64>, digits: usize) -> String {
    x.map_or_else(|| "-".to_string(), |v| format!("{v:.digits$}"))
}

impl fmt::Display for ComparisonReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:>8}  {:>12}  {:>14}  {:>14}  {:>16}",
            "snr_db", "optimal", "hybrid/opt", "analog/opt", "hybrid-analog"
        )?;
        for p in &self.points {
            writeln!(
                f,
                "{:>8.2}  {:>12.4}  {:>14}  {:>14}  {:>16}",
                p.snr_db,
                p.optimal,
                opt_cell(p.hybrid_ratio, 4),
                opt_cell(p.analog_ratio, 4),
                opt_cell(p.hybrid_analog_gap, 3)
            )?;
        }
        write!(f, "SNR gap optimal -> hybrid: ")?;
        match self.snr_gap_db {
            Some(g) => writeln!(f, "{g:.3} dB"),
            None => writeln!(f, "n/a"),
        }
    }
}
