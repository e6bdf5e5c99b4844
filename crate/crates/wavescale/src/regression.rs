//! Log-spectrum regression baseline: OLS of log2 y_j on the level index.

use crate::error::{Error, Result};
use crate::ndwt::LevelEnergies;
use crate::posterior::{Diagnostics, EstimateResult, Method, DEFAULT_H_MAX, DEFAULT_H_MIN};
use crate::signal::Hurst;

/// Unweighted least-squares fit of log2 y_j on j. Returns (slope, intercept).
pub fn log2_spectrum_fit(energies: &LevelEnergies) -> Result<(f64, f64)> {
    if energies.count() < 2 {
        return Err(Error::InsufficientLevels {
            required: 2,
            actual: energies.count(),
        });
    }
    let count = energies.count() as f64;
    let mut x_mean = 0.0;
    let mut y_mean = 0.0;
    for (level, y) in energies.iter() {
        x_mean += level as f64;
        y_mean += y.log2();
    }
    x_mean /= count;
    y_mean /= count;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (level, y) in energies.iter() {
        let dx = level as f64 - x_mean;
        sxx += dx * dx;
        sxy += dx * (y.log2() - y_mean);
    }
    let slope = sxy / sxx;
    Ok((slope, y_mean - slope * x_mean))
}

/// Estimate H from the spectrum slope: h = -(slope + m) / 2, clamped to
/// (0, 1) with the boundary flag set when clamping occurs. The intercept
/// recovers the scale as sigma2 = 2^intercept.
pub fn regression_estimate(energies: &LevelEnergies) -> Result<EstimateResult> {
    let (slope, intercept) = log2_spectrum_fit(energies)?;
    let raw = -(slope + energies.dimension() as f64) / 2.0;
    let (h, clamped) = if raw < DEFAULT_H_MIN {
        (DEFAULT_H_MIN, true)
    } else if raw > DEFAULT_H_MAX {
        (DEFAULT_H_MAX, true)
    } else {
        (raw, false)
    };
    Ok(EstimateResult {
        h_hat: Hurst::new(h)?,
        sigma2_hat: intercept.exp2(),
        log_posterior_at_mode: None,
        method: Method::Regression,
        levels_used: energies.levels(),
        diagnostics: Diagnostics {
            root_brackets: 0,
            boundary_hit: clamped,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model_energies(h: f64, sigma2: f64, log2_len: u32, j1: usize, j2: usize) -> LevelEnergies {
        let values: Vec<(usize, f64)> = (j1..=j2)
            .map(|j| (j, sigma2 * (-(2.0 * h + 1.0) * j as f64).exp2()))
            .collect();
        LevelEnergies::from_values(1, log2_len, &values).unwrap()
    }

    #[test]
    fn noiseless_line_is_recovered_exactly() {
        for (j1, j2) in [(4, 6), (2, 3), (1, 8)] {
            let energies = model_energies(0.4, 1.0, 11, j1, j2);
            let result = regression_estimate(&energies).unwrap();
            assert!(
                (result.h_hat.value() - 0.4).abs() < 1e-12,
                "levels {j1}:{j2}: {}",
                result.h_hat.value()
            );
            assert!((result.sigma2_hat - 1.0).abs() < 1e-10);
            assert_eq!(result.method, Method::Regression);
            assert!(!result.diagnostics.boundary_hit);
            assert_eq!(result.log_posterior_at_mode, None);
        }
    }

    #[test]
    fn scaling_energies_moves_only_the_intercept() {
        let energies = model_energies(0.7, 2.0, 11, 3, 8);
        let base = regression_estimate(&energies).unwrap();
        let scaled = regression_estimate(&energies.scaled(128.0).unwrap()).unwrap();
        assert_eq!(base.h_hat.value(), scaled.h_hat.value());
        assert!((scaled.sigma2_hat / base.sigma2_hat - 128.0).abs() < 1e-10);
    }

    #[test]
    fn level_order_does_not_matter() {
        let a = LevelEnergies::from_values(1, 6, &[(2, 0.4), (3, 0.1), (4, 0.02)]).unwrap();
        let b = LevelEnergies::from_values(1, 6, &[(4, 0.02), (3, 0.1), (2, 0.4)]).unwrap();
        assert_eq!(
            regression_estimate(&a).unwrap().h_hat.value(),
            regression_estimate(&b).unwrap().h_hat.value()
        );
    }

    #[test]
    fn single_level_is_rejected() {
        let energies = LevelEnergies::from_values(1, 4, &[(2, 1.0)]).unwrap();
        assert!(matches!(
            regression_estimate(&energies),
            Err(Error::InsufficientLevels { .. })
        ));
    }

    #[test]
    fn absurd_slopes_clamp_with_flag() {
        // Rising spectrum implies h < 0; must clamp to the lower bound.
        let energies = LevelEnergies::from_values(1, 6, &[(2, 1.0), (3, 16.0), (4, 256.0)]).unwrap();
        let result = regression_estimate(&energies).unwrap();
        assert!(result.diagnostics.boundary_hit);
        assert_eq!(result.h_hat.value(), DEFAULT_H_MIN);
        // Collapsing spectrum implies h > 1; must clamp to the upper bound.
        let energies =
            LevelEnergies::from_values(1, 6, &[(2, 1.0), (3, 1.0 / 32.0), (4, 1.0 / 1024.0)])
                .unwrap();
        let result = regression_estimate(&energies).unwrap();
        assert!(result.diagnostics.boundary_hit);
        assert_eq!(result.h_hat.value(), DEFAULT_H_MAX);
    }
}
