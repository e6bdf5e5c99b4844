//! Beta prior elicitation from a target mean and effective sample size.

use crate::error::{Error, Result};
use crate::posterior::BetaPrior;

/// Turn (prior mean, effective sample size) into beta hyperparameters:
/// alpha = mean * ess, beta = ess - alpha, so alpha + beta == ess exactly.
pub fn elicit_beta(mean: f64, ess: f64) -> Result<BetaPrior> {
    if !(mean.is_finite() && mean > 0.0 && mean < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "prior mean must lie in (0, 1), got {mean}"
        )));
    }
    if !(ess.is_finite() && ess > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "effective sample size must be positive, got {ess}"
        )));
    }
    let alpha = mean * ess;
    BetaPrior::new(alpha, ess - alpha)
}

/// Default effective sample size: half the signal length.
pub fn default_ess(n: usize) -> f64 {
    n as f64 / 2.0
}
