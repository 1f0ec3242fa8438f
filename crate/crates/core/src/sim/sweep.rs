use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use super::seed::trial_rng;
use super::SimConfig;
use crate::capacity::{capacity_trace, CapacityTrace};
use crate::channel::{sample_channel, ChannelRealization};
use crate::error::{Error, Result};
use crate::io::{fmt_f64, write_file};
use crate::precoder::{design, SchemeId};

#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub snr_db: f64,
    pub mean: f64,
    /// Sample standard deviation (`n - 1` denominator); zero for one trial.
    pub std: f64,
    /// Per-trial capacities in trial order.
    pub raw: Vec<f64>,
}

impl SweepPoint {
    fn from_raw(snr_db: f64, raw: Vec<f64>) -> Self {
        let n = raw.len() as f64;
        let mut sum = 0.0;
        for x in &raw {
            sum += x;
        }
        let mean = sum / n;
        let std = if raw.len() > 1 {
            let mut ss = 0.0;
            for x in &raw {
                ss += (x - mean) * (x - mean);
            }
            (ss / (n - 1.0)).sqrt()
        } else {
            0.0
        };
        Self { snr_db, mean, std, raw }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub snr_db_grid: Vec<f64>,
    pub trials: usize,
    /// One curve per scheme, points in grid order.
    pub curves: BTreeMap<SchemeId, Vec<SweepPoint>>,
}

impl SweepResult {
    pub fn curve(&self, scheme: SchemeId) -> Option<&[SweepPoint]> {
        self.curves.get(&scheme).map(Vec::as_slice)
    }

    pub fn means(&self, scheme: SchemeId) -> Option<Vec<f64>> {
        self.curve(scheme).map(|c| c.iter().map(|p| p.mean).collect())
    }

    /// Mean capacity of `scheme` at the grid point equal to `snr_db`.
    pub fn mean_at(&self, scheme: SchemeId, snr_db: f64) -> Option<f64> {
        self.curve(scheme)?.iter().find(|p| p.snr_db == snr_db).map(|p| p.mean)
    }

    pub fn summary_csv(&self) -> String {
        let mut out = String::from("scheme,snr_db,mean_capacity,std_capacity,trials\n");
        for (scheme, points) in &self.curves {
            for p in points {
                let _ = writeln!(
                    out,
                    "{scheme},{},{},{},{}",
                    fmt_f64(p.snr_db),
                    fmt_f64(p.mean),
                    fmt_f64(p.std),
                    p.raw.len()
                );
            }
        }
        out
    }

    pub fn raw_csv(&self) -> String {
        let mut out = String::from("scheme,snr_db,trial,capacity\n");
        for (scheme, points) in &self.curves {
            for p in points {
                for (trial, c) in p.raw.iter().enumerate() {
                    let _ = writeln!(out, "{scheme},{},{trial},{}", fmt_f64(p.snr_db), fmt_f64(*c));
                }
            }
        }
        out
    }
}

/// `<path>.raw.csv` next to the summary file.
pub fn raw_csv_path(path: &Path) -> PathBuf {
    let mut s = OsString::from(path.as_os_str());
    s.push(".raw.csv");
    PathBuf::from(s)
}

/// Writes the summary CSV to `path` and per-trial values to `<path>.raw.csv`.
pub fn write_csv(result: &SweepResult, path: &Path) -> Result<()> {
    write_file(path, &result.summary_csv())?;
    write_file(&raw_csv_path(path), &result.raw_csv())
}

pub fn channel_for_trial(config: &SimConfig, trial_index: usize) -> Result<ChannelRealization> {
    let mut rng = trial_rng(config.master_seed, trial_index);
    sample_channel(&config.array, &mut rng)
}

fn evaluate(
    config: &SimConfig,
    channel: &ChannelRealization,
    snr_db: f64,
) -> Result<BTreeMap<SchemeId, CapacityTrace>> {
    let snr = config.linear_snr(snr_db);
    let (n, m) = (config.array.n_rf, config.array.m_per_rf);
    config
        .schemes
        .iter()
        .map(|&scheme| {
            let precoder = design(scheme, &channel.h, n, m, snr)?;
            Ok((scheme, capacity_trace(&channel.h, &precoder.columns(), snr)?))
        })
        .collect()
}

/// Per-scheme capacity traces for one trial at one SNR.
pub fn run_trial_traces(
    config: &SimConfig,
    trial_index: usize,
    snr_db: f64,
) -> Result<BTreeMap<SchemeId, CapacityTrace>> {
    config.validate()?;
    if trial_index >= config.trials {
        return Err(Error::validation(format!(
            "trial {trial_index} outside 0..{}",
            config.trials
        )));
    }
    channel_for_trial(config, trial_index)
        .and_then(|ch| evaluate(config, &ch, snr_db))
        .map_err(|e| e.at_trial(trial_index, snr_db))
}

pub fn run_trial(config: &SimConfig, trial_index: usize, snr_db: f64) -> Result<BTreeMap<SchemeId, f64>> {
    Ok(run_trial_traces(config, trial_index, snr_db)?
        .into_iter()
        .map(|(scheme, trace)| (scheme, trace.total))
        .collect())
}

/// Runs every trial at every SNR on `worker_count` threads. Results are
/// gathered in trial order and reduced sequentially, so the output is
/// bit-identical for any worker count.
pub fn run_sweep(config: &SimConfig, worker_count: usize) -> Result<SweepResult> {
    config.validate()?;
    if worker_count == 0 {
        return Err(Error::validation("worker count must be at least 1"));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(worker_count)
        .build()
        .map_err(|e| Error::validation(format!("cannot start worker pool: {e}")))?;

    let grid = &config.snr_db_grid;
    let per_trial: Vec<Result<Vec<BTreeMap<SchemeId, f64>>>> = pool.install(|| {
        (0..config.trials)
            .into_par_iter()
            .map(|trial| {
                let channel = channel_for_trial(config, trial).map_err(|e| e.at_trial(trial, grid[0]))?;
                grid.iter()
                    .map(|&snr_db| {
                        evaluate(config, &channel, snr_db)
                            .map(|traces| traces.into_iter().map(|(s, t)| (s, t.total)).collect())
                            .map_err(|e| e.at_trial(trial, snr_db))
                    })
                    .collect()
            })
            .collect()
    });

    let mut rows = Vec::with_capacity(config.trials);
    for r in per_trial {
        rows.push(r?);
    }

    let curves = config
        .schemes
        .iter()
        .map(|&scheme| {
            let points = grid
                .iter()
                .enumerate()
                .map(|(i, &snr_db)| {
                    let raw = rows.iter().map(|trial| trial[i][&scheme]).collect();
                    SweepPoint::from_raw(snr_db, raw)
                })
                .collect();
            (scheme, points)
        })
        .collect();

    Ok(SweepResult {
        snr_db_grid: grid.clone(),
        trials: config.trials,
        curves,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn statistics() {
        let p = SweepPoint::from_raw(0.0, vec![1.0, 2.0, 3.0, 4.0]);
        assert_eq!(p.mean, 2.5);
        assert!((p.std - (5.0f64 / 3.0).sqrt()).abs() < 1e-15);
        let single = SweepPoint::from_raw(0.0, vec![7.25]);
        assert_eq!(single.mean, 7.25);
        assert_eq!(single.std, 0.0);
    }

    #[test]
    fn raw_path_appends_suffix() {
        assert_eq!(raw_csv_path(Path::new("/tmp/out.csv")), PathBuf::from("/tmp/out.csv.raw.csv"));
    }
}
