//! Randomized property suites behind the `selfcheck` CLI command.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::capacity::{capacity_direct, capacity_trace};
use crate::channel::ArrayConfig;
use crate::linalg::{Complex, ComplexMatrix};
use crate::precoder::{embed_block, quantize_to_hybrid};
use crate::sim::{run_sweep, run_trial, SimConfig};

const SEED: u64 = 0x5e1f_c4ec;

#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct SelfcheckReport {
    pub suites: Vec<SuiteOutcome>,
}

impl SelfcheckReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteOutcome::passed)
    }
}

impl fmt::Display for SelfcheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.suites {
            let status = if s.passed() { "PASS" } else { "FAIL" };
            writeln!(f, "{status} {} ({} cases)", s.name, s.cases)?;
            for msg in s.failures.iter().take(5) {
                writeln!(f, "    {msg}")?;
            }
        }
        Ok(())
    }
}

pub fn run_selfcheck() -> SelfcheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    SelfcheckReport {
        suites: vec![
            telescoping_identity(&mut rng),
            quantization_optimality(&mut rng),
            determinism(),
        ],
    }
}

fn gaussian(rng: &mut impl Rng) -> Complex {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex::new(re, im)
}

fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> ComplexMatrix {
    let data = (0..rows * cols).map(|_| gaussian(rng)).collect();
    ComplexMatrix::from_row_major(rows, cols, data).expect("finite gaussian entries")
}

fn telescoping_identity(rng: &mut ChaCha8Rng) -> SuiteOutcome {
    let mut failures = Vec::new();
    let cases = 60;
    for case in 0..cases {
        let n = rng.random_range(1..=4);
        let m = rng.random_range(1..=4);
        let k = rng.random_range(2..=6);
        let snr = [0.01, 1.0, 1000.0][case % 3];
        let h = random_matrix(rng, k, n * m);
        let cols: Vec<ComplexMatrix> = (0..n)
            .map(|i| embed_block(&random_matrix(rng, m, 1), i, n))
            .collect();
        let p = ComplexMatrix::hstack(&cols).expect("equal column heights");
        match (capacity_trace(&h, &cols, snr), capacity_direct(&h, &p, snr)) {
            (Ok(trace), Ok(direct)) => {
                let rel = (trace.total - direct).abs() / direct.abs().max(f64::MIN_POSITIVE);
                if rel >= 1e-6 {
                    failures.push(format!("case {case}: trace {} vs direct {direct}", trace.total));
                }
                if trace.increments.iter().any(|&x| x < -1e-12) {
                    failures.push(format!("case {case}: negative increment"));
                }
            }
            (Err(e), _) | (_, Err(e)) => failures.push(format!("case {case}: {e}")),
        }
    }
    SuiteOutcome {
        name: "sherman-morrison telescoping identity",
        cases,
        failures,
    }
}

fn quantization_optimality(rng: &mut ChaCha8Rng) -> SuiteOutcome {
    let mut failures = Vec::new();
    let cases = 200;
    for case in 0..cases {
        let m = rng.random_range(1..=8);
        let mut v = random_matrix(rng, m, 1);
        if m > 1 && case % 5 == 0 {
            v[(0, 0)] = Complex::new(0.0, 0.0);
        }
        let v = v.scale(1.0 / v.frobenius_norm());
        let (a, d) = match quantize_to_hybrid(&v) {
            Ok(x) => x,
            Err(e) => {
                failures.push(format!("case {case}: {e}"));
                continue;
            }
        };
        let expected_d = v.as_slice().iter().map(|z| z.norm()).sum::<f64>() / m as f64;
        if (d - expected_d).abs() > 1e-12 {
            failures.push(format!("case {case}: gain {d} vs {expected_d}"));
        }
        if a.as_slice().iter().any(|z| (z.norm() - 1.0).abs() > 1e-12) {
            failures.push(format!("case {case}: analog entry off the unit circle"));
        }
        let err = v.sub(&a.scale(d)).expect("same shape").frobenius_norm();
        for _ in 0..50 {
            let gain = rng.random_range(0.0..1.0);
            let phases: Vec<Complex> = a
                .as_slice()
                .iter()
                .map(|z| z * Complex::from_polar(1.0, rng.random_range(-0.3..0.3)))
                .collect();
            let candidate = ComplexMatrix::column_vector(phases).expect("finite").scale(gain);
            let other = v.sub(&candidate).expect("same shape").frobenius_norm();
            if other < err - 1e-12 {
                failures.push(format!("case {case}: candidate beats quantizer ({other} < {err})"));
                break;
            }
        }
    }
    SuiteOutcome {
        name: "quantization optimality",
        cases,
        failures,
    }
}

fn determinism() -> SuiteOutcome {
    let mut failures = Vec::new();
    let config = SimConfig::new(ArrayConfig::new(3, 2, 4, 2), vec![0.0, 10.0, 20.0], 6, 2024);
    match (run_sweep(&config, 1), run_sweep(&config, 3)) {
        (Ok(a), Ok(b)) => {
            if a.summary_csv() != b.summary_csv() || a.raw_csv() != b.raw_csv() {
                failures.push("sweep output depends on the worker count".to_string());
            }
        }
        (Err(e), _) | (_, Err(e)) => failures.push(e.to_string()),
    }
    match (run_trial(&config, 4, 10.0), run_trial(&config, 4, 10.0)) {
        (Ok(a), Ok(b)) if a == b => {}
        (Ok(_), Ok(_)) => failures.push("repeated trial differs".to_string()),
        (Err(e), _) | (_, Err(e)) => failures.push(e.to_string()),
    }
    SuiteOutcome {
        name: "determinism",
        cases: 2,
        failures,
    }
}

#[cfg(test)]
mod tests {
    #[test]
    fn selfcheck_passes() {
        let report = super::run_selfcheck();
        assert!(report.passed(), "{report}");
    }
}
