//! Command-line front end: argument grammar, dispatch, and report assembly.
//! The binary entry point is a thin wrapper around [`run`].

pub mod error;
pub mod input;
pub mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use wavescale::{
    default_ess, elicit_beta, generate_fbm, level_energies, map_estimate, ndwt_decompose,
    regression_estimate, BetaPrior, ExperimentConfig, FbmSpec, Hurst, Signal, SolverConfig,
    WaveletFilter,
};

use error::CliError;
use report::{EstimateReport, PriorEcho, SimulateReport, SpectrumReport};

#[derive(Debug, Parser)]
#[command(
    name = "wavescale",
    version,
    about = "Hurst exponent estimation from non-decimated wavelet level energies"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Estimate the Hurst exponent of a signal file
    Estimate(EstimateArgs),
    /// Monte Carlo estimator comparison on synthetic fractional Brownian motion
    Simulate(SimulateArgs),
    /// Emit the wavelet log2-energy spectrum and its regression line
    Spectrum(SpectrumArgs),
    /// Turn a prior mean and effective sample size into beta parameters
    Elicit(ElicitArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodChoice {
    Bayes,
    Regression,
    Both,
}

/// Parse a `j1:j2` level range.
fn parse_levels(text: &str) -> Result<(usize, usize), String> {
    let (a, b) = text
        .split_once(':')
        .ok_or_else(|| format!("expected j1:j2, got '{text}'"))?;
    let j1 = a.trim().parse::<usize>().map_err(|e| format!("bad j1: {e}"))?;
    let j2 = b.trim().parse::<usize>().map_err(|e| format!("bad j2: {e}"))?;
    Ok((j1, j2))
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    /// Signal file: plain text or CSV, first numeric column
    pub input: PathBuf,
    /// Wavelet filter: haar or db1..db8
    #[arg(long, default_value = "haar")]
    pub wavelet: String,
    /// Transform depth; defaults to min(8, log2 n)
    #[arg(long)]
    pub depth: Option<usize>,
    /// Analysis level range j1:j2 (finest computed level is log2(n) - 1)
    #[arg(long, value_parser = parse_levels)]
    pub levels: (usize, usize),
    #[arg(long, value_enum, default_value_t = MethodChoice::Both)]
    pub method: MethodChoice,
    /// Prior mean for H (elicits the beta prior together with --ess)
    #[arg(long)]
    pub prior_mean: Option<f64>,
    /// Effective sample size of the prior; defaults to n/2
    #[arg(long)]
    pub ess: Option<f64>,
    /// Explicit beta prior parameters (both required together)
    #[arg(long, requires = "beta", conflicts_with_all = ["prior_mean", "ess"])]
    pub alpha: Option<f64>,
    #[arg(long, requires = "alpha")]
    pub beta: Option<f64>,
    /// Error out instead of truncating non-power-of-two inputs
    #[arg(long)]
    pub strict: bool,
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// True Hurst exponent of the simulated paths
    #[arg(long)]
    pub hurst: f64,
    /// Signal length (a power of two)
    #[arg(long, default_value_t = 2048)]
    pub n: usize,
    /// Number of replicates
    #[arg(long, default_value_t = 200)]
    pub reps: usize,
    /// Comma-separated prior means, one Bayes column per mean
    #[arg(long, value_delimiter = ',', required = true)]
    pub prior_means: Vec<f64>,
    /// Effective sample size shared by all priors; defaults to n/2
    #[arg(long)]
    pub ess: Option<f64>,
    #[arg(long, value_parser = parse_levels, default_value = "4:6")]
    pub levels: (usize, usize),
    #[arg(long, default_value_t = 8)]
    pub depth: usize,
    #[arg(long, default_value = "haar")]
    pub wavelet: String,
    #[arg(long, default_value_t = 1.0)]
    pub sigma: f64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    pub format: OutputFormat,
    /// Also write per-replicate estimates (for box plots) to this CSV file
    #[arg(long)]
    pub raw_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    /// Signal file: plain text or CSV, first numeric column
    pub input: PathBuf,
    #[arg(long, default_value = "haar")]
    pub wavelet: String,
    #[arg(long)]
    pub depth: Option<usize>,
    #[arg(long, value_parser = parse_levels)]
    pub levels: (usize, usize),
    #[arg(long)]
    pub strict: bool,
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct ElicitArgs {
    /// Prior mean for H, in (0, 1)
    #[arg(long)]
    pub mean: f64,
    /// Effective sample size
    #[arg(long)]
    pub ess: Option<f64>,
    /// Signal length from which to default the ESS to n/2
    #[arg(long, conflicts_with = "ess")]
    pub n: Option<usize>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    pub format: OutputFormat,
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Estimate(args) => run_estimate(args),
        Command::Simulate(args) => run_simulate(args),
        Command::Spectrum(args) => run_spectrum(args),
        Command::Elicit(args) => run_elicit(args),
    }
}

/// Load, truncate, and decompose a signal file; shared by estimate and
/// spectrum. Returns the report header fields and the level energies.
struct PreparedSignal {
    n_read: usize,
    n_used: usize,
    truncated: bool,
    depth: usize,
    energies: wavescale::LevelEnergies,
}

fn prepare_signal(
    path: &std::path::Path,
    wavelet: &WaveletFilter,
    depth: Option<usize>,
    levels: (usize, usize),
    strict: bool,
) -> Result<PreparedSignal, CliError> {
    let values = input::read_signal_values(path)?;
    let n_read = values.len();
    let (values, truncated) = input::to_power_of_two(values, strict)?;
    let n_used = values.len();
    let signal = Signal::new(values).map_err(|e| CliError::Input(e.to_string()))?;
    let depth = depth.unwrap_or_else(|| (signal.log2_len() as usize).min(8));
    let decomposition = ndwt_decompose(&signal, depth, wavelet)?;
    let energies = level_energies(&decomposition, levels.0, levels.1)?;
    Ok(PreparedSignal {
        n_read,
        n_used,
        truncated,
        depth,
        energies,
    })
}

fn resolve_prior(
    prior_mean: Option<f64>,
    ess: Option<f64>,
    alpha: Option<f64>,
    beta: Option<f64>,
    n_used: usize,
) -> Result<BetaPrior, CliError> {
    match (alpha, beta, prior_mean) {
        (Some(a), Some(b), _) => Ok(BetaPrior::new(a, b)?),
        (None, None, Some(mean)) => {
            Ok(elicit_beta(mean, ess.unwrap_or_else(|| default_ess(n_used)))?)
        }
        _ => Err(CliError::Usage(
            "the Bayes estimator needs --prior-mean (optionally with --ess) \
             or an explicit --alpha/--beta pair"
                .to_string(),
        )),
    }
}

fn run_estimate(args: EstimateArgs) -> Result<(), CliError> {
    let wavelet = WaveletFilter::from_name(&args.wavelet)?;
    let prepared = prepare_signal(&args.input, &wavelet, args.depth, args.levels, args.strict)?;

    let prior = match args.method {
        MethodChoice::Regression => None,
        _ => Some(resolve_prior(
            args.prior_mean,
            args.ess,
            args.alpha,
            args.beta,
            prepared.n_used,
        )?),
    };

    let mut estimates = Vec::new();
    if let Some(prior) = &prior {
        let result = map_estimate(&prepared.energies, prior, &SolverConfig::default())?;
        estimates.push(report::EstimateEntry::from(&result));
    }
    if matches!(args.method, MethodChoice::Regression | MethodChoice::Both) {
        let result = regression_estimate(&prepared.energies)?;
        estimates.push(report::EstimateEntry::from(&result));
    }

    let report = EstimateReport {
        input: args.input.display().to_string(),
        n_read: prepared.n_read,
        n_used: prepared.n_used,
        truncated: prepared.truncated,
        wavelet: wavelet.name().to_string(),
        depth: prepared.depth,
        levels: args.levels,
        prior: prior.map(PriorEcho::from),
        estimates,
    };
    emit(&report, args.format, EstimateReport::to_table, EstimateReport::to_csv)
}

fn run_simulate(args: SimulateArgs) -> Result<(), CliError> {
    if args.prior_means.is_empty() {
        return Err(CliError::Usage("--prior-means needs at least one value".to_string()));
    }
    let wavelet = WaveletFilter::from_name(&args.wavelet)?;
    let ess = args.ess.unwrap_or_else(|| default_ess(args.n));
    let priors = args
        .prior_means
        .iter()
        .map(|&mean| Ok(elicit_beta(mean, ess)?))
        .collect::<Result<Vec<BetaPrior>, CliError>>()?;
    if !args.n.is_power_of_two() {
        return Err(CliError::Usage(format!(
            "--n must be a power of two, got {}",
            args.n
        )));
    }
    let config = ExperimentConfig {
        replicates: args.reps,
        n: args.n,
        hurst: Hurst::new(args.hurst)?,
        sigma: args.sigma,
        filter: wavelet.clone(),
        depth: args.depth,
        levels: args.levels,
        priors,
        master_seed: args.seed,
        solver: SolverConfig::default(),
    };
    let report = wavescale::run_experiment(&config)?;
    let simulate_report = SimulateReport {
        n: args.n,
        wavelet: wavelet.name().to_string(),
        depth: args.depth,
        levels: args.levels,
        sigma: args.sigma,
        ess,
        master_seed: args.seed,
        report,
    };
    if let Some(path) = &args.raw_out {
        std::fs::write(path, simulate_report.raw_csv())
            .map_err(|e| CliError::Internal(format!("cannot write {}: {e}", path.display())))?;
    }
    emit(
        &simulate_report,
        args.format,
        SimulateReport::to_table,
        SimulateReport::to_csv,
    )
}

fn run_spectrum(args: SpectrumArgs) -> Result<(), CliError> {
    let wavelet = WaveletFilter::from_name(&args.wavelet)?;
    let prepared = prepare_signal(&args.input, &wavelet, args.depth, args.levels, args.strict)?;
    let report = SpectrumReport::from_energies(
        args.input.display().to_string(),
        prepared.n_used,
        wavelet.name().to_string(),
        prepared.depth,
        &prepared.energies,
    )?;
    emit(&report, args.format, SpectrumReport::to_table, SpectrumReport::to_csv)
}

fn run_elicit(args: ElicitArgs) -> Result<(), CliError> {
    let ess = match (args.ess, args.n) {
        (Some(e), _) => e,
        (None, Some(n)) => default_ess(n),
        (None, None) => {
            return Err(CliError::Usage("provide --ess or --n".to_string()));
        }
    };
    let prior = elicit_beta(args.mean, ess)?;
    let echo = PriorEcho::from(prior);
    match args.format {
        OutputFormat::Table => {
            println!(
                "alpha {}\nbeta {}\nmean {}\ness {}",
                report::format_sig(echo.alpha, 10),
                report::format_sig(echo.beta, 10),
                report::format_sig(echo.mean, 10),
                report::format_sig(echo.ess, 10)
            );
        }
        OutputFormat::Json => println!("{}", serde_json::to_string_pretty(&echo).unwrap()),
        OutputFormat::Csv => {
            println!("alpha,beta,mean,ess");
            println!("{},{},{},{}", echo.alpha, echo.beta, echo.mean, echo.ess);
        }
    }
    Ok(())
}

fn emit<R: serde::Serialize>(
    report: &R,
    format: OutputFormat,
    table: impl Fn(&R) -> String,
    csv: impl Fn(&R) -> String,
) -> Result<(), CliError> {
    match format {
        OutputFormat::Table => print!("{}", table(report)),
        OutputFormat::Json => println!("{}", serde_json::to_string_pretty(report).unwrap()),
        OutputFormat::Csv => print!("{}", csv(report)),
    }
    Ok(())
}

/// Deterministic fBm fixture generation for tests and demos: writes one
/// sample per line.
pub fn write_fbm_fixture(
    path: &std::path::Path,
    n: usize,
    hurst: f64,
    seed: u64,
) -> Result<(), CliError> {
    let spec = FbmSpec::new(n, Hurst::new(hurst)?, 1.0, seed)?;
    let signal = generate_fbm(&spec)?;
    let mut text = String::new();
    for x in signal.samples() {
        text.push_str(&format!("{x}\n"));
    }
    std::fs::write(path, text)
        .map_err(|e| CliError::Internal(format!("cannot write {}: {e}", path.display())))
}
