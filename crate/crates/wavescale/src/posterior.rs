//! Bayesian engine for wavelet-domain scaling estimation.
//!
//! Model: the averaged energy y_j at level j of an m-dimensional
//! self-similar Gaussian signal is a scaled chi-square with b = 2^{mJ}
//! degrees of freedom and mean sigma^2 2^{-(2H+m)j}. The prior is
//! beta(alpha, beta) on H times the non-informative 1/sigma^2 on the scale.
//! sigma^2 has a closed-form maximizer at fixed H, which reduces MAP
//! estimation to a one-dimensional root-finding problem in H.
//!
//! Everything is computed in the natural-log domain through log-gamma;
//! b/2 = n/2 easily exceeds 1000, so linear-domain densities would
//! overflow long before realistic signal lengths.

use std::f64::consts::LN_2;

use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::ndwt::LevelEnergies;
use crate::signal::Hurst;

/// Default lower search bound for H.
pub const DEFAULT_H_MIN: f64 = 1e-7;
/// Default upper search bound for H.
pub const DEFAULT_H_MAX: f64 = 1.0 - 1e-7;

/// Beta(alpha, beta) prior on the Hurst exponent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BetaPrior {
    alpha: f64,
    beta: f64,
}

impl BetaPrior {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 0.0 && beta.is_finite() && beta > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "beta prior needs positive parameters, got alpha={alpha}, beta={beta}"
            )));
        }
        Ok(Self { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Prior mean alpha / (alpha + beta).
    pub fn mean(&self) -> f64 {
        self.alpha / (self.alpha + self.beta)
    }

    /// Effective sample size alpha + beta.
    pub fn ess(&self) -> f64 {
        self.alpha + self.beta
    }
}

/// Tuning of the MAP root search.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Spacing of the sign-change scan over [h_min, h_max].
    pub coarse_step: f64,
    /// Width to which each bracket is bisected.
    pub refine_tolerance: f64,
    pub h_min: f64,
    pub h_max: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            coarse_step: 1e-4,
            refine_tolerance: 1e-7,
            h_min: DEFAULT_H_MIN,
            h_max: DEFAULT_H_MAX,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.h_min > 0.0 && self.h_min < self.h_max && self.h_max < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "need 0 < h_min < h_max < 1, got [{}, {}]",
                self.h_min, self.h_max
            )));
        }
        if !(self.coarse_step > 0.0 && self.refine_tolerance > 0.0) {
            return Err(Error::InvalidArgument(
                "solver steps must be positive".to_string(),
            ));
        }
        if self.refine_tolerance > self.coarse_step {
            return Err(Error::InvalidArgument(format!(
                "refine tolerance {} exceeds coarse step {}",
                self.refine_tolerance, self.coarse_step
            )));
        }
        Ok(())
    }
}

/// Which estimator produced a result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    BayesMap,
    Regression,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Method::BayesMap => write!(f, "bayes-map"),
            Method::Regression => write!(f, "regression"),
        }
    }
}

/// Solver bookkeeping attached to an estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostics {
    /// Number of sign-change brackets the coarse scan found.
    pub root_brackets: usize,
    /// True when the estimate sits on a search boundary (no interior
    /// stationary point won, or the regression fit was clamped).
    pub boundary_hit: bool,
}

/// A point estimate of (H, sigma^2) with its provenance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateResult {
    pub h_hat: Hurst,
    pub sigma2_hat: f64,
    /// Profile log-posterior at the mode; None for the regression baseline.
    pub log_posterior_at_mode: Option<f64>,
    pub method: Method,
    pub levels_used: (usize, usize),
    pub diagnostics: Diagnostics,
}

/// Log-density of the averaged energy at one level.
///
/// With b = 2^{mJ} and y the level average of squared coefficients:
/// ln g(y) = -ln Gamma(b/2) + (b/2) ln(2^{(2H+m)j + mJ} / (2 sigma^2))
///           + (b/2 - 1) ln y - (b / (2 sigma^2)) y 2^{(2H+m)j}.
pub fn energy_log_density(
    y: f64,
    level: usize,
    hurst: Hurst,
    sigma2: f64,
    dimension: u32,
    log2_len: u32,
) -> Result<f64> {
    if !(y.is_finite() && y > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "energy must be a positive real, got {y}"
        )));
    }
    if !(sigma2.is_finite() && sigma2 > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "sigma2 must be a positive real, got {sigma2}"
        )));
    }
    let half_dof = 0.5 * ((dimension as u64 * log2_len as u64) as f64).exp2();
    let growth = 2.0 * hurst.value() + dimension as f64; // 2H + m
    let level_exponent = growth * level as f64; // (2H + m) j
    let log_rate = (level_exponent + (dimension as u64 * log2_len as u64) as f64) * LN_2
        - (2.0 * sigma2).ln();
    Ok(-ln_gamma(half_dof) + half_dof * log_rate + (half_dof - 1.0) * y.ln()
        - half_dof / sigma2 * y * level_exponent.exp2())
}

/// Joint log-likelihood of (H, sigma^2) given the level energies: the sum
/// of `energy_log_density` over the carried levels.
pub fn log_likelihood(hurst: Hurst, sigma2: f64, energies: &LevelEnergies) -> Result<f64> {
    let mut total = 0.0;
    for (level, y) in energies.iter() {
        total += energy_log_density(
            y,
            level,
            hurst,
            sigma2,
            energies.dimension(),
            energies.log2_len(),
        )?;
    }
    Ok(total)
}

/// Weighted level sums sum_j y_j 2^{(2H+m)j} and sum_j j y_j 2^{(2H+m)j},
/// with the largest exponent factored out. Returns (s0, s1, factored_log2),
/// where the true sums are (s0, s1) * 2^{factored_log2}.
fn weighted_level_sums(hurst: Hurst, energies: &LevelEnergies) -> (f64, f64, f64) {
    let growth = 2.0 * hurst.value() + energies.dimension() as f64;
    let (_, finest) = energies.levels();
    let top_exponent = growth * finest as f64; // growth > 0, so the max is at j2
    let mut s0 = 0.0;
    let mut s1 = 0.0;
    for (level, y) in energies.iter() {
        let w = y * (growth * level as f64 - top_exponent).exp2();
        s0 += w;
        s1 += level as f64 * w;
    }
    (s0, s1, top_exponent)
}

/// The sigma^2 that maximizes the posterior at fixed H:
/// b sum_j y_j 2^{(2H+m)j} / (bc + 2).
pub fn profile_sigma2(hurst: Hurst, energies: &LevelEnergies) -> f64 {
    let dof = energies.chi_square_dof();
    let count = energies.count() as f64;
    let (s0, _, factored_log2) = weighted_level_sums(hurst, energies);
    dof * s0 * factored_log2.exp2() / (dof * count + 2.0)
}

/// Log-posterior of H with sigma^2 profiled out. All H-independent terms
/// are included, so values are comparable across H (but not normalized).
pub fn log_posterior_profile(
    hurst: Hurst,
    energies: &LevelEnergies,
    prior: &BetaPrior,
) -> Result<f64> {
    let dof = energies.chi_square_dof();
    let count = energies.count() as f64;
    let dimension = energies.dimension() as f64;
    let dof_total = dof * count + 2.0; // bc + 2
    let sigma2 = profile_sigma2(hurst, energies);
    let h = hurst.value();

    let growth = 2.0 * h + dimension;
    let mut level_terms = 0.0;
    for (level, y) in energies.iter() {
        level_terms += 0.5 * dof * growth * level as f64 * LN_2 + 0.5 * (dof - 2.0) * y.ln();
    }

    Ok(-0.5 * dof_total * sigma2.ln() + level_terms - 0.5 * dof_total
        + ln_gamma(prior.alpha() + prior.beta())
        - ln_gamma(prior.alpha())
        - ln_gamma(prior.beta())
        + (prior.alpha() - 1.0) * h.ln()
        + (prior.beta() - 1.0) * (-h).ln_1p()
        - count * ln_gamma(0.5 * dof)
        + 0.5 * dof * count * (0.5 * dof).ln())
}

/// Derivative of the profile log-posterior in H:
/// -(bc+2) ln2 S1/S0 + b ln2 sum_j j + (alpha-1)/H - (beta-1)/(1-H),
/// where S0 = sum_j y_j 2^{(2H+m)j} and S1 = sum_j j y_j 2^{(2H+m)j}.
pub fn posterior_h_derivative(
    hurst: Hurst,
    energies: &LevelEnergies,
    prior: &BetaPrior,
) -> Result<f64> {
    let dof = energies.chi_square_dof();
    let count = energies.count() as f64;
    let dof_total = dof * count + 2.0;
    let (s0, s1, _) = weighted_level_sums(hurst, energies);
    let level_sum: f64 = energies.iter().map(|(level, _)| level as f64).sum();
    let h = hurst.value();
    Ok(-dof_total * LN_2 * (s1 / s0) + dof * LN_2 * level_sum + (prior.alpha() - 1.0) / h
        - (prior.beta() - 1.0) / (1.0 - h))
}

/// Maximum a posteriori estimate of (H, sigma^2).
///
/// Scans [h_min, h_max] at `coarse_step` for sign changes of the profile
/// derivative, bisects each bracket to `refine_tolerance`, and returns the
/// candidate (roots plus the two endpoints) with the highest profile
/// log-posterior. An endpoint winner sets the boundary-hit flag; exact ties
/// break toward the prior mean.
pub fn map_estimate(
    energies: &LevelEnergies,
    prior: &BetaPrior,
    config: &SolverConfig,
) -> Result<EstimateResult> {
    config.validate()?;
    if energies.count() < 2 {
        return Err(Error::InsufficientLevels {
            required: 2,
            actual: energies.count(),
        });
    }

    let derivative = |h: f64| -> Result<f64> {
        posterior_h_derivative(Hurst::new(h)?, energies, prior)
    };

    let mut candidates = vec![config.h_min, config.h_max];
    let mut brackets = 0usize;

    let steps = ((config.h_max - config.h_min) / config.coarse_step).ceil() as u64;
    let grid = |i: u64| -> f64 {
        if i >= steps {
            config.h_max
        } else {
            config.h_min + i as f64 * config.coarse_step
        }
    };
    let mut prev_h = grid(0);
    let mut prev_d = derivative(prev_h)?;
    for i in 1..=steps {
        let h = grid(i);
        let d = derivative(h)?;
        if prev_d == 0.0 {
            candidates.push(prev_h);
        } else if d != 0.0 && (prev_d < 0.0) != (d < 0.0) {
            brackets += 1;
            candidates.push(bisect_root(&derivative, prev_h, prev_d, h, config)?);
        }
        prev_h = h;
        prev_d = d;
    }
    if prev_d == 0.0 {
        candidates.push(prev_h);
    }

    let mut best_h = f64::NAN;
    let mut best_value = f64::NEG_INFINITY;
    let prior_mean = prior.mean();
    for &h in &candidates {
        let value = log_posterior_profile(Hurst::new(h)?, energies, prior)?;
        let better = value > best_value
            || (value == best_value
                && (h - prior_mean).abs() < (best_h - prior_mean).abs());
        if better {
            best_value = value;
            best_h = h;
        }
    }

    let boundary_hit = best_h == config.h_min || best_h == config.h_max;
    let h_hat = Hurst::new(best_h)?;
    Ok(EstimateResult {
        h_hat,
        sigma2_hat: profile_sigma2(h_hat, energies),
        log_posterior_at_mode: Some(best_value),
        method: Method::BayesMap,
        levels_used: energies.levels(),
        diagnostics: Diagnostics {
            root_brackets: brackets,
            boundary_hit,
        },
    })
}

/// Bisect a sign-change bracket of `f` down to the configured tolerance.
fn bisect_root(
    f: &dyn Fn(f64) -> Result<f64>,
    mut lo: f64,
    mut f_lo: f64,
    mut hi: f64,
    config: &SolverConfig,
) -> Result<f64> {
    while hi - lo > config.refine_tolerance {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break; // interval no longer splittable in f64
        }
        let f_mid = f(mid)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
