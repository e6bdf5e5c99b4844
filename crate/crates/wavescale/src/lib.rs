//! Hurst exponent estimation for self-similar signals from non-decimated
//! wavelet level energies.
//!
//! The pipeline: decompose a signal with a non-decimated wavelet transform
//! ([`ndwt`]), average squared detail coefficients per level, and estimate
//! the scaling exponent H either by MAP inference under a chi-square energy
//! likelihood with a beta prior on H ([`posterior`]) or by log-spectrum
//! regression ([`regression`]). An exact fractional Brownian motion
//! generator ([`fbm`]) and a Monte Carlo harness ([`harness`]) validate and
//! compare the estimators; [`prior`] elicits beta hyperparameters from a
//! target mean and an effective sample size.
//!
//! ```
//! use wavescale::{
//!     elicit_beta, generate_fbm, level_energies, map_estimate, ndwt_decompose,
//!     regression_estimate, FbmSpec, Hurst, SolverConfig, WaveletFilter,
//! };
//!
//! let spec = FbmSpec::new(2048, Hurst::new(0.3)?, 1.0, 42)?;
//! let path = generate_fbm(&spec)?;
//! let decomposition = ndwt_decompose(&path, 8, &WaveletFilter::haar())?;
//! let energies = level_energies(&decomposition, 4, 6)?;
//!
//! let prior = elicit_beta(0.3, 1024.0)?;
//! let bayes = map_estimate(&energies, &prior, &SolverConfig::default())?;
//! let baseline = regression_estimate(&energies)?;
//! assert!((bayes.h_hat.value() - 0.3).abs() < 0.2);
//! assert!((baseline.h_hat.value() - 0.3).abs() < 0.4);
//! # Ok::<(), wavescale::Error>(())
//! ```

pub mod error;
pub mod fbm;
pub mod filters;
pub mod harness;
pub mod ndwt;
pub mod posterior;
pub mod prior;
pub mod regression;
pub mod signal;

pub use error::{Error, Result};
pub use fbm::{fbm_covariance, fgn_autocovariance, generate_fbm, FbmSpec};
pub use filters::WaveletFilter;
pub use harness::{run_experiment, summarize, ExperimentConfig, MonteCarloReport};
pub use ndwt::{level_energies, ndwt_decompose, LevelEnergies, NdwtDecomposition};
pub use posterior::{
    energy_log_density, log_likelihood, log_posterior_profile, map_estimate,
    posterior_h_derivative, profile_sigma2, BetaPrior, Diagnostics, EstimateResult, Method,
    SolverConfig,
};
pub use prior::{default_ess, elicit_beta};
pub use regression::{log2_spectrum_fit, regression_estimate};
pub use signal::{Hurst, Signal};
