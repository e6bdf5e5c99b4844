//! Shared domain types: the Hurst exponent and 1-D signals.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hurst exponent, constrained to the open interval (0, 1).
///
/// 1/2 is ordinary Brownian motion; values above indicate persistence,
/// values below anti-persistence.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Hurst(f64);

impl Hurst {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && value > 0.0 && value < 1.0 {
            Ok(Self(value))
        } else {
            Err(Error::InvalidArgument(format!(
                "Hurst exponent must lie in (0, 1), got {value}"
            )))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for Hurst {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        Hurst::new(value)
    }
}

impl From<Hurst> for f64 {
    fn from(h: Hurst) -> f64 {
        h.0
    }
}

/// A finite real-valued series of length >= 2.
#[derive(Debug, Clone, PartialEq)]
pub struct Signal {
    samples: Vec<f64>,
}

impl Signal {
    pub fn new(samples: Vec<f64>) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::InvalidArgument(format!(
                "signal needs at least 2 samples, got {}",
                samples.len()
            )));
        }
        if let Some(bad) = samples.iter().find(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "signal contains a non-finite sample: {bad}"
            )));
        }
        Ok(Self { samples })
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        false // length >= 2 by construction
    }

    /// Number of dyadic levels the signal supports: floor(log2 n).
    pub fn log2_len(&self) -> u32 {
        usize::BITS - 1 - self.samples.len().leading_zeros()
    }
}
