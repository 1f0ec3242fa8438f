use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use subarray_precoding::channel::{write_channel_csv, ArrayConfig, Normalization};
use subarray_precoding::precoder::{design, SchemeId};
use subarray_precoding::selfcheck::run_selfcheck;
use subarray_precoding::sim::{
    self, channel_for_trial, compare, parse_schemes, parse_snr_grid, raw_csv_path, run_sweep, SimConfig,
};
use subarray_precoding::{Error, Result};

#[derive(Parser)]
#[command(version, about = "Sub-array hybrid precoding simulator for mmWave massive MIMO")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a Monte Carlo SNR sweep, write CSV and print the scheme comparison
    Simulate(SimulateArgs),
    /// Write one channel realization as CSV
    ChannelDump(ChannelDumpArgs),
    /// Write one designed precoder as CSV
    PrecoderDump(PrecoderDumpArgs),
    /// Run the randomized property suites
    Selfcheck,
}

#[derive(Args)]
struct ArrayArgs {
    /// RF chains (sub-arrays), N
    #[arg(long, default_value_t = 16)]
    n_rf: usize,
    /// Antennas per sub-array, M
    #[arg(long, default_value_t = 8)]
    m_per_rf: usize,
    /// Receive antennas, K
    #[arg(long, default_value_t = 16)]
    k_rx: usize,
    /// Propagation paths, L
    #[arg(long, default_value_t = 10)]
    paths: usize,
    /// Channel scale: standard or paper-literal
    #[arg(long, default_value = "standard")]
    normalization: String,
}

impl ArrayArgs {
    fn config(&self) -> Result<ArrayConfig> {
        let normalization: Normalization = self.normalization.parse()?;
        let config =
            ArrayConfig::new(self.n_rf, self.m_per_rf, self.k_rx, self.paths).with_normalization(normalization);
        config.validate()?;
        Ok(config)
    }
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    array: ArrayArgs,
    /// SNR grid in dB as start:step:stop
    #[arg(long, default_value = "0:2:30", allow_hyphen_values = true)]
    snr_db: String,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Comma list of hybrid-sic, optimal, analog-phase
    #[arg(long, default_value = "hybrid-sic,optimal,analog-phase")]
    schemes: String,
    /// Divide the SNR by the number of streams
    #[arg(long)]
    stream_power_norm: bool,
    /// Worker threads (defaults to available parallelism)
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ChannelDumpArgs {
    #[command(flatten)]
    array: ArrayArgs,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct PrecoderDumpArgs {
    /// hybrid-sic, optimal or analog-phase
    #[arg(long)]
    scheme: String,
    #[arg(long, allow_hyphen_values = true)]
    snr_db: f64,
    #[command(flatten)]
    array: ArrayArgs,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

fn single_trial_config(array: ArrayConfig, snr_db: f64, seed: u64) -> SimConfig {
    SimConfig::new(array, vec![snr_db], 1, seed)
}

fn simulate(args: SimulateArgs) -> Result<()> {
    let mut config = SimConfig::new(args.array.config()?, parse_snr_grid(&args.snr_db)?, args.trials, args.seed);
    config.schemes = parse_schemes(&args.schemes)?;
    config.stream_power_norm = args.stream_power_norm;
    config.output_path = Some(args.out.clone());
    config.validate()?;

    let workers = args
        .workers
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let started = Instant::now();
    let result = run_sweep(&config, workers)?;
    sim::write_csv(&result, &args.out)?;
    eprintln!(
        "{} trials x {} SNR points in {:.2?}; wrote {} and {}",
        config.trials,
        config.snr_db_grid.len(),
        started.elapsed(),
        args.out.display(),
        raw_csv_path(&args.out).display()
    );

    if result.curve(SchemeId::OptimalUnconstrained).is_some() && result.curves.len() > 1 {
        print!("{}", compare(&result)?);
    } else {
        for (scheme, points) in &result.curves {
            for p in points {
                println!("{scheme:>14} {:>8.2} dB  {:>12.4} bits/s/Hz", p.snr_db, p.mean);
            }
        }
    }
    Ok(())
}

fn channel_dump(args: ChannelDumpArgs) -> Result<()> {
    let config = single_trial_config(args.array.config()?, 0.0, args.seed);
    let channel = channel_for_trial(&config, 0)?;
    write_channel_csv(&channel, &args.out)
}

fn precoder_dump(args: PrecoderDumpArgs) -> Result<()> {
    let scheme: SchemeId = args.scheme.parse()?;
    let config = single_trial_config(args.array.config()?, args.snr_db, args.seed);
    let channel = channel_for_trial(&config, 0)?;
    let precoder = design(
        scheme,
        &channel.h,
        config.array.n_rf,
        config.array.m_per_rf,
        config.linear_snr(args.snr_db),
    )?;
    precoder.write_csv(&args.out)
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Simulate(args) => simulate(args),
        Command::ChannelDump(args) => channel_dump(args),
        Command::PrecoderDump(args) => precoder_dump(args),
        Command::Selfcheck => {
            let report = run_selfcheck();
            print!("{report}");
            if report.passed() {
                Ok(())
            } else {
                Err(Error::Numerical("selfcheck failed".into()))
            }
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
