//! Report structures and their table/json/csv renderings. Field names are
//! part of the CLI contract (see the README).

use serde::{Deserialize, Serialize};
use wavescale::{EstimateResult, LevelEnergies, MonteCarloReport};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PriorEcho {
    pub alpha: f64,
    pub beta: f64,
    pub mean: f64,
    pub ess: f64,
}

impl From<wavescale::BetaPrior> for PriorEcho {
    fn from(prior: wavescale::BetaPrior) -> Self {
        Self {
            alpha: prior.alpha(),
            beta: prior.beta(),
            mean: prior.mean(),
            ess: prior.ess(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateEntry {
    pub method: wavescale::Method,
    pub h_hat: f64,
    pub sigma2_hat: f64,
    pub log_posterior_at_mode: Option<f64>,
    pub root_brackets: usize,
    pub boundary_hit: bool,
}

impl From<&EstimateResult> for EstimateEntry {
    fn from(result: &EstimateResult) -> Self {
        Self {
            method: result.method,
            h_hat: result.h_hat.value(),
            sigma2_hat: result.sigma2_hat,
            log_posterior_at_mode: result.log_posterior_at_mode,
            root_brackets: result.diagnostics.root_brackets,
            boundary_hit: result.diagnostics.boundary_hit,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateReport {
    pub input: String,
    pub n_read: usize,
    pub n_used: usize,
    pub truncated: bool,
    pub wavelet: String,
    pub depth: usize,
    pub levels: (usize, usize),
    pub prior: Option<PriorEcho>,
    pub estimates: Vec<EstimateEntry>,
}

impl EstimateReport {
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "input: {} ({} samples read, {} used{})\n",
            self.input,
            self.n_read,
            self.n_used,
            if self.truncated { ", truncated" } else { "" }
        ));
        out.push_str(&format!(
            "transform: {} depth {} levels {}:{}\n",
            self.wavelet, self.depth, self.levels.0, self.levels.1
        ));
        if let Some(p) = &self.prior {
            out.push_str(&format!(
                "prior: beta(alpha={}, beta={}) mean {} ess {}\n",
                format_sig(p.alpha, 10),
                format_sig(p.beta, 10),
                format_sig(p.mean, 10),
                format_sig(p.ess, 10)
            ));
        }
        for e in &self.estimates {
            out.push_str(&format!(
                "{}: h_hat {:.6}  sigma2_hat {:.6e}{}{}\n",
                e.method,
                e.h_hat,
                e.sigma2_hat,
                match e.log_posterior_at_mode {
                    Some(v) => format!("  log_posterior {v:.4}"),
                    None => String::new(),
                },
                if e.boundary_hit { "  [boundary]" } else { "" }
            ));
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "method,h_hat,sigma2_hat,log_posterior_at_mode,root_brackets,boundary_hit,\
             levels,wavelet,depth,n_used,prior_alpha,prior_beta\n",
        );
        for e in &self.estimates {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}:{},{},{},{},{},{}\n",
                e.method,
                e.h_hat,
                e.sigma2_hat,
                e.log_posterior_at_mode
                    .map(|v| v.to_string())
                    .unwrap_or_default(),
                e.root_brackets,
                e.boundary_hit,
                self.levels.0,
                self.levels.1,
                self.wavelet,
                self.depth,
                self.n_used,
                self.prior.map(|p| p.alpha.to_string()).unwrap_or_default(),
                self.prior.map(|p| p.beta.to_string()).unwrap_or_default(),
            ));
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRow {
    pub level: usize,
    pub log2_energy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub input: String,
    pub n_used: usize,
    pub wavelet: String,
    pub depth: usize,
    pub levels: (usize, usize),
    /// Least-squares fit of log2 energy on level.
    pub slope: f64,
    pub intercept: f64,
    /// H implied by the fitted slope, -(slope + 1) / 2, unclamped.
    pub h_implied: f64,
    pub rows: Vec<SpectrumRow>,
}

impl SpectrumReport {
    /// Assemble the spectrum rows and fit for a set of level energies.
    pub fn from_energies(
        input: String,
        n_used: usize,
        wavelet: String,
        depth: usize,
        energies: &LevelEnergies,
    ) -> wavescale::Result<Self> {
        let (slope, intercept) = wavescale::log2_spectrum_fit(energies)?;
        let rows = energies
            .iter()
            .map(|(level, y)| SpectrumRow {
                level,
                log2_energy: y.log2(),
            })
            .collect();
        Ok(Self {
            input,
            n_used,
            wavelet,
            depth,
            levels: energies.levels(),
            slope,
            intercept,
            h_implied: -(slope + energies.dimension() as f64) / 2.0,
            rows,
        })
    }

    /// Plot-ready columns with the fit in a comment header.
    pub fn to_table(&self) -> String {
        let mut out = format!(
            "# {} {} depth {} levels {}:{}\n# slope {}  intercept {}  h_implied {}\n# level log2_energy\n",
            self.input, self.wavelet, self.depth, self.levels.0, self.levels.1,
            self.slope, self.intercept, self.h_implied
        );
        for row in &self.rows {
            out.push_str(&format!("{} {}\n", row.level, row.log2_energy));
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("level,log2_energy,slope,intercept,h_implied\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                row.level, row.log2_energy, self.slope, self.intercept, self.h_implied
            ));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulateReport {
    pub n: usize,
    pub wavelet: String,
    pub depth: usize,
    pub levels: (usize, usize),
    pub sigma: f64,
    pub ess: f64,
    pub master_seed: u64,
    pub report: MonteCarloReport,
}

impl SimulateReport {
    /// The four-row statistics table, one column per estimator cell.
    pub fn to_table(&self) -> String {
        let report = &self.report;
        let mut out = format!(
            "simulation: H={} n={} replicates={} wavelet={} depth={} levels={}:{} ess={} sigma={} seed={}\n\n",
            report.true_hurst.value(),
            self.n,
            report.replicates,
            self.wavelet,
            self.depth,
            self.levels.0,
            self.levels.1,
            self.ess,
            self.sigma,
            self.master_seed
        );
        let labels: Vec<String> = report
            .cells
            .iter()
            .map(|cell| match cell.prior {
                Some(p) => format!("prior {}", format_sig(p.mean(), 4)),
                None => "regression".to_string(),
            })
            .collect();
        out.push_str(&format!("{:<14}", "statistic"));
        for label in &labels {
            out.push_str(&format!("  {label:>12}"));
        }
        out.push('\n');
        type StatPick = fn(&wavescale::harness::SummaryStats) -> f64;
        let rows: [(&str, StatPick); 4] = [
            ("mean", |s| s.mean),
            ("variance", |s| s.variance),
            ("mse", |s| s.mse),
            ("squared_bias", |s| s.squared_bias),
        ];
        for (name, pick) in rows {
            out.push_str(&format!("{name:<14}"));
            for cell in &report.cells {
                out.push_str(&format!("  {:>12.6}", pick(&cell.stats)));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out =
            String::from("method,prior_mean,alpha,beta,mean,variance,mse,squared_bias\n");
        for cell in &self.report.cells {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                cell.method,
                cell.prior.map(|p| p.mean().to_string()).unwrap_or_default(),
                cell.prior.map(|p| p.alpha().to_string()).unwrap_or_default(),
                cell.prior.map(|p| p.beta().to_string()).unwrap_or_default(),
                cell.stats.mean,
                cell.stats.variance,
                cell.stats.mse,
                cell.stats.squared_bias
            ));
        }
        out
    }

    /// Per-replicate estimates for box plots.
    pub fn raw_csv(&self) -> String {
        let mut out = String::from("replicate,method,prior_mean,h_hat\n");
        for cell in &self.report.cells {
            let prior_mean = cell.prior.map(|p| p.mean().to_string()).unwrap_or_default();
            for (replicate, h) in cell.estimates.iter().enumerate() {
                out.push_str(&format!("{replicate},{},{prior_mean},{h}\n", cell.method));
            }
        }
        out
    }
}

/// Fixed decimal places with trailing zeros trimmed, for human-facing
/// numbers whose raw round-trip form would show float noise.
pub fn format_sig(value: f64, digits: usize) -> String {
    let s = format!("{value:.digits$}");
    let trimmed = s.trim_end_matches('0').trim_end_matches('.');
    trimmed.to_string()
}
