//! Monte Carlo comparison of the Bayes MAP and regression estimators on
//! synthetic fractional Brownian motion.
//!
//! Replicates are independent and may run in parallel; every replicate
//! derives its own generator seed from (master seed, replicate index), and
//! aggregation is ordered by replicate index with compensated summation, so
//! a report is bit-stable regardless of thread schedule.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fbm::{generate_fbm, FbmSpec};
use crate::filters::WaveletFilter;
use crate::ndwt::{level_energies, ndwt_decompose};
use crate::posterior::{map_estimate, BetaPrior, Method, SolverConfig};
use crate::regression::regression_estimate;
use crate::signal::Hurst;

/// One Monte Carlo experiment: fBm inputs, transform settings, analysis
/// levels, and the prior grid to compare.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub replicates: usize,
    /// Signal length (a power of two).
    pub n: usize,
    pub hurst: Hurst,
    pub sigma: f64,
    pub filter: WaveletFilter,
    pub depth: usize,
    /// Analysis level range (j1, j2).
    pub levels: (usize, usize),
    pub priors: Vec<BetaPrior>,
    pub master_seed: u64,
    pub solver: SolverConfig,
}

/// Summary of one estimator's replicate estimates against the true H.
///
/// The variance uses the population convention (divisor N), so
/// mse = variance + squared_bias holds to accumulation precision.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SummaryStats {
    pub mean: f64,
    pub variance: f64,
    pub mse: f64,
    pub squared_bias: f64,
}

/// One (estimator, prior) column of the report, with the raw estimates
/// retained for box plots and recomputation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimatorCell {
    pub method: Method,
    /// The prior behind a Bayes cell; None for the regression baseline.
    pub prior: Option<BetaPrior>,
    pub stats: SummaryStats,
    pub estimates: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloReport {
    pub true_hurst: Hurst,
    pub replicates: usize,
    /// Bayes cells in prior order, then the regression cell.
    pub cells: Vec<EstimatorCell>,
}

impl MonteCarloReport {
    pub fn regression_cell(&self) -> &EstimatorCell {
        self.cells
            .iter()
            .find(|c| c.method == Method::Regression)
            .expect("report always carries a regression cell")
    }

    pub fn bayes_cells(&self) -> impl Iterator<Item = &EstimatorCell> {
        self.cells.iter().filter(|c| c.method == Method::BayesMap)
    }

    /// Bayes cell whose prior mean is closest to `mean`.
    pub fn bayes_cell_for_mean(&self, mean: f64) -> Option<&EstimatorCell> {
        self.bayes_cells().min_by(|a, b| {
            let da = (a.prior.unwrap().mean() - mean).abs();
            let db = (b.prior.unwrap().mean() - mean).abs();
            da.total_cmp(&db)
        })
    }
}

/// Generator seed for one replicate: SplitMix64 output at stream position
/// `replicate` of the master seed.
pub fn replicate_seed(master: u64, replicate: u64) -> u64 {
    let mut z = master.wrapping_add(replicate.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

struct ReplicateRow {
    bayes: Vec<f64>,
    regression: f64,
}

/// Run the full experiment and aggregate per-cell statistics.
pub fn run_experiment(config: &ExperimentConfig) -> Result<MonteCarloReport> {
    if config.replicates == 0 {
        return Err(Error::InvalidArgument(
            "experiment needs at least one replicate".to_string(),
        ));
    }
    config.solver.validate()?;

    let (j1, j2) = config.levels;
    let rows: Vec<Result<ReplicateRow>> = (0..config.replicates)
        .into_par_iter()
        .map(|replicate| {
            let spec = FbmSpec::new(
                config.n,
                config.hurst,
                config.sigma,
                replicate_seed(config.master_seed, replicate as u64),
            )?;
            let path = generate_fbm(&spec)?;
            let decomposition = ndwt_decompose(&path, config.depth, &config.filter)?;
            let energies = level_energies(&decomposition, j1, j2).map_err(|e| match e {
                Error::DegenerateInput(msg) => {
                    Error::DegenerateInput(format!("replicate {replicate}: {msg}"))
                }
                other => other,
            })?;
            let regression = regression_estimate(&energies)?.h_hat.value();
            let bayes = config
                .priors
                .iter()
                .map(|prior| {
                    map_estimate(&energies, prior, &config.solver).map(|r| r.h_hat.value())
                })
                .collect::<Result<Vec<f64>>>()?;
            Ok(ReplicateRow { bayes, regression })
        })
        .collect();

    let mut bayes_estimates: Vec<Vec<f64>> =
        vec![Vec::with_capacity(config.replicates); config.priors.len()];
    let mut regression_estimates = Vec::with_capacity(config.replicates);
    for row in rows {
        let row = row?;
        for (cell, value) in bayes_estimates.iter_mut().zip(row.bayes) {
            cell.push(value);
        }
        regression_estimates.push(row.regression);
    }

    let mut cells = Vec::with_capacity(config.priors.len() + 1);
    for (prior, estimates) in config.priors.iter().zip(bayes_estimates) {
        cells.push(EstimatorCell {
            method: Method::BayesMap,
            prior: Some(*prior),
            stats: summarize(&estimates, config.hurst)?,
            estimates,
        });
    }
    cells.push(EstimatorCell {
        method: Method::Regression,
        prior: None,
        stats: summarize(&regression_estimates, config.hurst)?,
        estimates: regression_estimates,
    });

    Ok(MonteCarloReport {
        true_hurst: config.hurst,
        replicates: config.replicates,
        cells,
    })
}

/// Replicate statistics against the true H: mean, population variance
/// (divisor N), mean squared error, and squared bias.
pub fn summarize(estimates: &[f64], true_hurst: Hurst) -> Result<SummaryStats> {
    if estimates.is_empty() {
        return Err(Error::InvalidArgument(
            "cannot summarize an empty estimate vector".to_string(),
        ));
    }
    let n = estimates.len() as f64;
    let truth = true_hurst.value();
    let mean = compensated_sum(estimates.iter().copied()) / n;
    let variance = compensated_sum(estimates.iter().map(|x| (x - mean) * (x - mean))) / n;
    let mse = compensated_sum(estimates.iter().map(|x| (x - truth) * (x - truth))) / n;
    let squared_bias = (mean - truth) * (mean - truth);
    Ok(SummaryStats {
        mean,
        variance,
        mse,
        squared_bias,
    })
}

/// Neumaier compensated summation; order-deterministic.
fn compensated_sum(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut compensation = 0.0;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            compensation += (sum - t) + v;
        } else {
            compensation += (v - t) + sum;
        }
        sum = t;
    }
    sum + compensation
}
