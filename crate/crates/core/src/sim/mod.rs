//! Seeded Monte Carlo capacity sweeps.
//!
//! Every trial draws one channel realization from its own random stream
//! (see [`trial_seed`]) and reuses it for all SNR points and all schemes, so
//! scheme comparisons are paired and results do not depend on how trials are
//! scheduled across workers.

mod report;
mod seed;
mod sweep;

use std::collections::BTreeSet;
use std::path::PathBuf;

pub use report::{compare, interpolated_snr_gap, ComparisonPoint, ComparisonReport};
pub use seed::{trial_rng, trial_seed, SplitMix64};
pub use sweep::{
    channel_for_trial, raw_csv_path, run_sweep, run_trial, run_trial_traces, write_csv, SweepPoint, SweepResult,
};

use crate::channel::ArrayConfig;
use crate::error::{Error, Result};
use crate::precoder::SchemeId;

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub array: ArrayConfig,
    /// SNR points in dB, strictly increasing.
    pub snr_db_grid: Vec<f64>,
    pub trials: usize,
    pub master_seed: u64,
    pub schemes: BTreeSet<SchemeId>,
    pub output_path: Option<PathBuf>,
    /// Divide the SNR by the stream count `N` (unit total transmit power
    /// spread over the streams).
    pub stream_power_norm: bool,
}

impl SimConfig {
    pub fn new(array: ArrayConfig, snr_db_grid: Vec<f64>, trials: usize, master_seed: u64) -> Self {
        Self {
            array,
            snr_db_grid,
            trials,
            master_seed,
            schemes: SchemeId::ALL.into_iter().collect(),
            output_path: None,
            stream_power_norm: false,
        }
    }

    pub fn with_schemes(mut self, schemes: impl IntoIterator<Item = SchemeId>) -> Self {
        self.schemes = schemes.into_iter().collect();
        self
    }

    pub fn validate(&self) -> Result<()> {
        self.array.validate()?;
        if self.trials == 0 {
            return Err(Error::validation("at least one trial is required"));
        }
        if self.snr_db_grid.is_empty() {
            return Err(Error::validation("SNR grid is empty"));
        }
        if self.snr_db_grid.iter().any(|x| !x.is_finite()) {
            return Err(Error::validation("SNR grid has non-finite values"));
        }
        if self.snr_db_grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::validation("SNR grid must be strictly increasing"));
        }
        if self.schemes.is_empty() {
            return Err(Error::validation("no schemes selected"));
        }
        Ok(())
    }

    /// Linear SNR used in both precoder design and rate evaluation.
    pub fn linear_snr(&self, snr_db: f64) -> f64 {
        let snr = db_to_linear(snr_db);
        if self.stream_power_norm {
            snr / self.array.n_rf as f64
        } else {
            snr
        }
    }
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Parses `start:step:stop` (inclusive of `stop` when it lies on the grid).
pub fn parse_snr_grid(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let parse = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| Error::validation(format!("bad number '{s}' in SNR grid '{spec}'")))
    };
    let (start, step, stop) = match parts.as_slice() {
        [single] => {
            let x = parse(single)?;
            (x, 1.0, x)
        }
        [start, step, stop] => (parse(start)?, parse(step)?, parse(stop)?),
        _ => return Err(Error::validation(format!("SNR grid '{spec}' is not start:step:stop"))),
    };
    if !(step > 0.0) || !start.is_finite() || !stop.is_finite() || stop < start {
        return Err(Error::validation(format!("SNR grid '{spec}' is empty or not increasing")));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| start + step * i as f64).collect())
}

pub fn parse_schemes(list: &str) -> Result<BTreeSet<SchemeId>> {
    let schemes = list
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::parse)
        .collect::<Result<BTreeSet<_>>>()?;
    if schemes.is_empty() {
        return Err(Error::validation("no schemes selected"));
    }
    Ok(schemes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing() {
        assert_eq!(parse_snr_grid("0:10:30").unwrap(), vec![0.0, 10.0, 20.0, 30.0]);
        assert_eq!(parse_snr_grid("-5:2.5:0").unwrap(), vec![-5.0, -2.5, 0.0]);
        assert_eq!(parse_snr_grid("0:4:10").unwrap(), vec![0.0, 4.0, 8.0]);
        assert_eq!(parse_snr_grid("7").unwrap(), vec![7.0]);
        let fine = parse_snr_grid("0:0.1:30").unwrap();
        assert_eq!(fine.len(), 301);
        assert!(parse_snr_grid("0:0:10").is_err());
        assert!(parse_snr_grid("10:1:0").is_err());
        assert!(parse_snr_grid("a:1:2").is_err());
        assert!(parse_snr_grid("1:2").is_err());
    }

    #[test]
    fn scheme_list_parsing() {
        let s = parse_schemes("optimal, hybrid-sic").unwrap();
        assert_eq!(
            s.into_iter().collect::<Vec<_>>(),
            vec![SchemeId::HybridSic, SchemeId::OptimalUnconstrained]
        );
        assert!(parse_schemes("").is_err());
        assert!(parse_schemes("optimal,bogus").is_err());
    }

    #[test]
    fn config_validation() {
        let ok = SimConfig::new(ArrayConfig::new(2, 2, 2, 1), vec![0.0, 10.0], 3, 1);
        ok.validate().unwrap();
        let mut bad = ok.clone();
        bad.trials = 0;
        assert!(bad.validate().is_err());
        let mut bad = ok.clone();
        bad.snr_db_grid = vec![10.0, 10.0];
        assert!(bad.validate().is_err());
        let mut bad = ok.clone();
        bad.snr_db_grid.clear();
        assert!(bad.validate().is_err());
        let bad = ok.clone().with_schemes([]);
        assert!(bad.validate().is_err());
    }

    #[test]
    fn snr_conversion() {
        let mut config = SimConfig::new(ArrayConfig::new(4, 2, 2, 1), vec![0.0], 1, 1);
        assert!((config.linear_snr(30.0) - 1000.0).abs() < 1e-9);
        assert_eq!(config.linear_snr(0.0), 1.0);
        config.stream_power_norm = true;
        assert_eq!(config.linear_snr(0.0), 0.25);
    }
}
