//! Exact fractional Brownian motion sampling and its covariance functions.
//!
//! Paths are generated by circulant embedding of the stationary increment
//! process (fractional Gaussian noise) followed by a cumulative sum, so the
//! sampled covariance is exact up to floating point and the generator can
//! double as a statistical oracle.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rustfft::{num_complex::Complex, FftPlanner};

use crate::error::{Error, Result};
use crate::signal::{Hurst, Signal};

/// Relative floor for circulant eigenvalues. The embedded covariance of
/// fractional Gaussian noise is nonnegative definite, so anything below
/// `-EIGENVALUE_TOLERANCE * max eigenvalue` signals a bug rather than
/// rounding noise.
const EIGENVALUE_TOLERANCE: f64 = 1e-10;

/// Parameters of one fractional Brownian motion sample path.
///
/// Paths live on the unit-spaced grid t = 1..n; the implicit origin
/// B(0) = 0 is not stored. Identical specs (including `seed`) produce
/// bit-identical paths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FbmSpec {
    pub n: usize,
    pub hurst: Hurst,
    pub sigma: f64,
    pub seed: u64,
}

impl FbmSpec {
    pub fn new(n: usize, hurst: Hurst, sigma: f64, seed: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!(
                "fBm path needs n >= 2, got {n}"
            )));
        }
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "scale sigma must be a positive real, got {sigma}"
            )));
        }
        Ok(Self {
            n,
            hurst,
            sigma,
            seed,
        })
    }
}

/// Covariance of fractional Brownian motion at times `t` and `s`:
/// (sigma2 / 2) (|t|^{2H} + |s|^{2H} - |t-s|^{2H}).
pub fn fbm_covariance(t: f64, s: f64, hurst: Hurst, sigma2: f64) -> Result<f64> {
    if !t.is_finite() || !s.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "covariance times must be finite, got t={t}, s={s}"
        )));
    }
    if !(sigma2.is_finite() && sigma2 > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "sigma2 must be a positive real, got {sigma2}"
        )));
    }
    let two_h = 2.0 * hurst.value();
    Ok(0.5
        * sigma2
        * (t.abs().powf(two_h) + s.abs().powf(two_h) - (t - s).abs().powf(two_h)))
}

/// Autocovariance of unit-lag fBm increments (fractional Gaussian noise):
/// (sigma2 / 2) (|lag+1|^{2H} - 2 |lag|^{2H} + |lag-1|^{2H}).
pub fn fgn_autocovariance(lag: u64, hurst: Hurst, sigma2: f64) -> f64 {
    let two_h = 2.0 * hurst.value();
    let k = lag as f64;
    0.5 * sigma2 * ((k + 1.0).powf(two_h) - 2.0 * k.powf(two_h) + (k - 1.0).abs().powf(two_h))
}

/// Generate an exact fBm sample path on the grid t = 1..n.
///
/// The increments are drawn by circulant embedding of the fGn covariance;
/// the path is their cumulative sum.
pub fn generate_fbm(spec: &FbmSpec) -> Result<Signal> {
    let mut increments = generate_fgn(spec)?;
    let mut acc = 0.0;
    for x in increments.iter_mut() {
        acc += *x;
        *x = acc;
    }
    Signal::new(increments)
}

/// Stationary Gaussian increments with autocovariance `fgn_autocovariance`.
fn generate_fgn(spec: &FbmSpec) -> Result<Vec<f64>> {
    let n = spec.n;
    let m = 2 * n;
    let sigma2 = spec.sigma * spec.sigma;

    // First row of the length-2n circulant that embeds the n x n Toeplitz
    // covariance: [r_0, .., r_n, r_{n-1}, .., r_1].
    let mut spectrum: Vec<Complex<f64>> = Vec::with_capacity(m);
    for k in 0..=n {
        spectrum.push(Complex::new(
            fgn_autocovariance(k as u64, spec.hurst, sigma2),
            0.0,
        ));
    }
    for k in (1..n).rev() {
        spectrum.push(Complex::new(
            fgn_autocovariance(k as u64, spec.hurst, sigma2),
            0.0,
        ));
    }

    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft_forward(m);
    fft.process(&mut spectrum);

    let max_eigenvalue = spectrum.iter().map(|c| c.re).fold(f64::NEG_INFINITY, f64::max);
    let floor = -EIGENVALUE_TOLERANCE * max_eigenvalue;
    let mut eigenvalues = Vec::with_capacity(m);
    for (k, c) in spectrum.iter().enumerate() {
        if c.re < floor {
            return Err(Error::Internal(format!(
                "circulant eigenvalue {k} = {} below tolerance (max {max_eigenvalue}); \
                 the fGn embedding should be nonnegative definite",
                c.re
            )));
        }
        eigenvalues.push(c.re.max(0.0));
    }

    // Hermitian-symmetric spectral noise, so the transform below is real.
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut draw = || -> f64 { StandardNormal.sample(&mut rng) };
    let scale = 1.0 / m as f64;
    let mut noise = vec![Complex::new(0.0, 0.0); m];
    noise[0] = Complex::new((eigenvalues[0] * scale).sqrt() * draw(), 0.0);
    for k in 1..n {
        let amplitude = (0.5 * eigenvalues[k] * scale).sqrt();
        let re = draw();
        let im = draw();
        noise[k] = Complex::new(amplitude * re, amplitude * im);
        noise[m - k] = noise[k].conj();
    }
    noise[n] = Complex::new((eigenvalues[n] * scale).sqrt() * draw(), 0.0);

    let fft = planner.plan_fft_forward(m);
    fft.process(&mut noise);
    Ok(noise[..n].iter().map(|c| c.re).collect())
}
