//! Non-decimated (a trous) wavelet transform with periodic boundaries, and
//! the averaged per-level energies consumed by the scaling estimators.
//!
//! Level bookkeeping: a signal of length n = 2^J decomposed to `depth`
//! stages yields detail levels {J-depth, .., J-1}, finest level J-1. Stage
//! s of the cascade (s = 1 finest) uses filters upsampled by inserting
//! 2^{s-1}-1 zeros between taps and is stored under level j = J - s. The
//! filters keep unit l2 norm at every stage, so an individual coefficient at
//! level j is distributed like a decimated-transform coefficient there.

use crate::error::{Error, Result};
use crate::filters::WaveletFilter;
use crate::signal::Signal;

/// Output of the non-decimated transform: one detail array per level plus
/// the final smooth, each of the input length.
#[derive(Debug, Clone)]
pub struct NdwtDecomposition {
    /// details[s-1] holds cascade stage s, i.e. level J - s.
    details: Vec<Vec<f64>>,
    smooth: Vec<f64>,
    log2_len: u32,
    filter: WaveletFilter,
}

impl NdwtDecomposition {
    pub fn n(&self) -> usize {
        self.smooth.len()
    }

    pub fn depth(&self) -> usize {
        self.details.len()
    }

    /// J = log2 of the signal length.
    pub fn log2_len(&self) -> u32 {
        self.log2_len
    }

    pub fn coarsest_level(&self) -> usize {
        self.log2_len as usize - self.details.len()
    }

    pub fn finest_level(&self) -> usize {
        self.log2_len as usize - 1
    }

    /// Detail coefficients at level `j`, or None outside the computed range.
    pub fn level(&self, j: usize) -> Option<&[f64]> {
        if j < self.coarsest_level() || j > self.finest_level() {
            return None;
        }
        let stage = self.log2_len as usize - j;
        Some(&self.details[stage - 1])
    }

    /// All levels, coarsest first.
    pub fn levels(&self) -> impl Iterator<Item = (usize, &[f64])> {
        let finest = self.finest_level();
        self.details
            .iter()
            .enumerate()
            .map(move |(i, d)| (finest - i, d.as_slice()))
            .rev()
    }

    pub fn smooth(&self) -> &[f64] {
        &self.smooth
    }

    pub fn filter(&self) -> &WaveletFilter {
        &self.filter
    }
}

/// Non-decimated wavelet transform of a power-of-two-length signal.
pub fn ndwt_decompose(
    signal: &Signal,
    depth: usize,
    filter: &WaveletFilter,
) -> Result<NdwtDecomposition> {
    let n = signal.len();
    if !n.is_power_of_two() {
        return Err(Error::InvalidArgument(format!(
            "signal length {n} is not a power of two"
        )));
    }
    let log2_len = signal.log2_len();
    if depth == 0 || depth > log2_len as usize {
        return Err(Error::InvalidArgument(format!(
            "depth {depth} outside 1..={log2_len} for length {n}"
        )));
    }

    let mut smooth = signal.samples().to_vec();
    let mut details = Vec::with_capacity(depth);
    for stage in 1..=depth {
        let stride = 1usize << (stage - 1);
        details.push(circular_filter(&smooth, filter.highpass(), stride));
        smooth = circular_filter(&smooth, filter.lowpass(), stride);
    }

    Ok(NdwtDecomposition {
        details,
        smooth,
        log2_len,
        filter: filter.clone(),
    })
}

/// Circular convolution with a zero-upsampled filter:
/// out[k] = sum_l taps[l] * x[(k - l * stride) mod n].
fn circular_filter(x: &[f64], taps: &[f64], stride: usize) -> Vec<f64> {
    let n = x.len();
    let mask = n - 1; // n is a power of two
    let mut out = vec![0.0; n];
    for (k, slot) in out.iter_mut().enumerate() {
        let mut acc = 0.0;
        for (l, &tap) in taps.iter().enumerate() {
            acc += tap * x[k.wrapping_sub(l * stride) & mask];
        }
        *slot = acc;
    }
    out
}

/// Averaged squared detail coefficients over a level range, plus the model
/// constants downstream estimators need.
///
/// The level set must be contiguous; the chi-square degrees of freedom of
/// each energy under the scaling model is 2^{mJ}.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelEnergies {
    /// (level, energy), ascending and contiguous in level.
    energies: Vec<(usize, f64)>,
    dimension: u32,
    log2_len: u32,
}

impl LevelEnergies {
    /// Assemble energies from explicit (level, value) pairs, in any order.
    ///
    /// `dimension` is the field dimension m (1 for this crate's transform)
    /// and `log2_len` is J = log2 of the signal length.
    pub fn from_values(dimension: u32, log2_len: u32, values: &[(usize, f64)]) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::InvalidArgument(
                "dimension m must be at least 1".to_string(),
            ));
        }
        if log2_len == 0 || (dimension as u64) * (log2_len as u64) > 62 {
            return Err(Error::InvalidArgument(format!(
                "m*J = {} outside the supported range 1..=62",
                dimension as u64 * log2_len as u64
            )));
        }
        if values.is_empty() {
            return Err(Error::InvalidArgument(
                "at least one level energy is required".to_string(),
            ));
        }
        let mut energies = values.to_vec();
        energies.sort_by_key(|&(j, _)| j);
        for (&(j, y), &(j_next, _)) in energies.iter().zip(energies.iter().skip(1)) {
            if j_next == j {
                return Err(Error::InvalidArgument(format!("duplicate level {j}")));
            }
            if j_next != j + 1 {
                return Err(Error::InvalidArgument(format!(
                    "levels must be contiguous; gap between {j} and {j_next}"
                )));
            }
            let _ = y;
        }
        if energies.last().unwrap().0 >= log2_len as usize {
            return Err(Error::InvalidArgument(format!(
                "level {} exceeds the finest level {}",
                energies.last().unwrap().0,
                log2_len - 1
            )));
        }
        for &(j, y) in &energies {
            if !(y.is_finite() && y > 0.0) {
                return Err(Error::DegenerateInput(format!(
                    "level {j} energy must be a positive real, got {y}"
                )));
            }
        }
        Ok(Self {
            energies,
            dimension,
            log2_len,
        })
    }

    /// (j1, j2): the coarsest and finest level carried.
    pub fn levels(&self) -> (usize, usize) {
        (
            self.energies.first().unwrap().0,
            self.energies.last().unwrap().0,
        )
    }

    /// Number of levels carried.
    pub fn count(&self) -> usize {
        self.energies.len()
    }

    /// Field dimension m.
    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    /// J = log2 of the signal length.
    pub fn log2_len(&self) -> u32 {
        self.log2_len
    }

    /// Chi-square degrees of freedom of each averaged energy: 2^{mJ}.
    pub fn chi_square_dof(&self) -> f64 {
        ((self.dimension as u64 * self.log2_len as u64) as f64).exp2()
    }

    /// (level, energy) pairs, ascending in level.
    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.energies.iter().copied()
    }

    /// Energies with every value multiplied by `k` (k > 0).
    pub fn scaled(&self, k: f64) -> Result<Self> {
        let scaled: Vec<(usize, f64)> = self.energies.iter().map(|&(j, y)| (j, k * y)).collect();
        Self::from_values(self.dimension, self.log2_len, &scaled)
    }
}

/// Mean squared detail coefficient per level over [j1, j2].
pub fn level_energies(decomp: &NdwtDecomposition, j1: usize, j2: usize) -> Result<LevelEnergies> {
    if j1 > j2 {
        return Err(Error::InvalidArgument(format!(
            "level range {j1}:{j2} is reversed"
        )));
    }
    if j1 < decomp.coarsest_level() || j2 > decomp.finest_level() {
        return Err(Error::InvalidArgument(format!(
            "level range {j1}:{j2} outside the computed levels {}..={}",
            decomp.coarsest_level(),
            decomp.finest_level()
        )));
    }
    let n = decomp.n() as f64;
    let mut values = Vec::with_capacity(j2 - j1 + 1);
    for j in j1..=j2 {
        let details = decomp.level(j).expect("range checked above");
        let energy = details.iter().map(|d| d * d).sum::<f64>() / n;
        if energy == 0.0 {
            return Err(Error::DegenerateInput(format!(
                "level {j} has zero energy; the signal is constant or dead at this scale"
            )));
        }
        values.push((j, energy));
    }
    LevelEnergies::from_values(1, decomp.log2_len(), &values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal::Signal;

    fn signal(samples: &[f64]) -> Signal {
        Signal::new(samples.to_vec()).unwrap()
    }

    #[test]
    fn rejects_bad_shapes() {
        let haar = WaveletFilter::haar();
        let s = signal(&[1.0, 2.0, 3.0]);
        assert!(ndwt_decompose(&s, 1, &haar).is_err());
        let s = signal(&[0.0; 8]);
        assert!(ndwt_decompose(&s, 0, &haar).is_err());
        assert!(ndwt_decompose(&s, 4, &haar).is_err());
        assert!(ndwt_decompose(&s, 3, &haar).is_ok());
    }

    #[test]
    fn constant_signal_has_zero_details() {
        let haar = WaveletFilter::haar();
        let s = signal(&[5.0, 5.0, 5.0, 5.0]);
        let d = ndwt_decompose(&s, 2, &haar).unwrap();
        for (_, details) in d.levels() {
            assert!(details.iter().all(|&x| x == 0.0));
        }
        assert!(level_energies(&d, 0, 1).is_err());
        match level_energies(&d, 0, 1) {
            Err(Error::DegenerateInput(_)) => {}
            other => panic!("expected degenerate input, got {other:?}"),
        }
    }

    #[test]
    fn alternating_signal_finest_level() {
        let haar = WaveletFilter::haar();
        let s = signal(&[1.0, -1.0, 1.0, -1.0, 1.0, -1.0, 1.0, -1.0]);
        let d = ndwt_decompose(&s, 1, &haar).unwrap();
        let details = d.level(2).unwrap();
        let sqrt2 = std::f64::consts::SQRT_2;
        for (k, &x) in details.iter().enumerate() {
            let want = if k % 2 == 0 { sqrt2 } else { -sqrt2 };
            assert!((x - want).abs() < 1e-15, "detail[{k}] = {x}");
        }
        assert!(d.smooth().iter().all(|&x| x.abs() < 1e-15));
    }

    #[test]
    fn delta_signal_finest_energy() {
        let haar = WaveletFilter::haar();
        let mut samples = vec![0.0; 8];
        samples[0] = 1.0;
        let d = ndwt_decompose(&signal(&samples), 3, &haar).unwrap();
        let finest = d.finest_level();
        assert_eq!(finest, 2);
        let energies = level_energies(&d, finest, finest).unwrap();
        let (_, y) = energies.iter().next().unwrap();
        assert!((y - 0.125).abs() < 1e-15, "finest energy {y}");
    }

    #[test]
    fn level_bookkeeping_matches_convention() {
        let haar = WaveletFilter::haar();
        let s = signal(&vec![1.0; 2048]);
        let d = ndwt_decompose(&s, 8, &haar).unwrap();
        assert_eq!(d.log2_len(), 11);
        assert_eq!(d.finest_level(), 10);
        assert_eq!(d.coarsest_level(), 3);
        let levels: Vec<usize> = d.levels().map(|(j, _)| j).collect();
        assert_eq!(levels, (3..=10).collect::<Vec<_>>());
        for (_, arr) in d.levels() {
            assert_eq!(arr.len(), 2048);
        }
        assert!(d.level(2).is_none());
        assert!(d.level(11).is_none());
    }

    #[test]
    fn shift_covariance_is_exact() {
        let filter = WaveletFilter::daubechies(3).unwrap();
        let n = 64;
        let base: Vec<f64> = (0..n).map(|i| ((i * 37 + 11) % 23) as f64 - 11.0).collect();
        let mut shifted = base.clone();
        shifted.rotate_right(1);
        let d0 = ndwt_decompose(&signal(&base), 4, &filter).unwrap();
        let d1 = ndwt_decompose(&signal(&shifted), 4, &filter).unwrap();
        for ((_, a), (_, b)) in d0.levels().zip(d1.levels()) {
            let mut rotated = a.to_vec();
            rotated.rotate_right(1);
            assert_eq!(rotated, b);
        }
    }

    #[test]
    fn mean_of_squares_hand_value() {
        // Details equal to 2 at a level with n = 4 give energy 4.
        let energies = LevelEnergies::from_values(1, 2, &[(1, 4.0)]).unwrap();
        let (_, y) = energies.iter().next().unwrap();
        assert_eq!(y, 4.0);
    }

    #[test]
    fn from_values_validation() {
        assert!(LevelEnergies::from_values(1, 4, &[]).is_err());
        assert!(LevelEnergies::from_values(1, 4, &[(1, 1.0), (3, 1.0)]).is_err());
        assert!(LevelEnergies::from_values(1, 4, &[(1, 1.0), (1, 2.0)]).is_err());
        assert!(LevelEnergies::from_values(1, 4, &[(1, 0.0)]).is_err());
        assert!(LevelEnergies::from_values(1, 4, &[(1, -1.0)]).is_err());
        assert!(LevelEnergies::from_values(1, 4, &[(4, 1.0)]).is_err());
        assert!(LevelEnergies::from_values(0, 4, &[(1, 1.0)]).is_err());
        // Order does not matter; storage is canonical.
        let a = LevelEnergies::from_values(1, 5, &[(2, 1.0), (3, 2.0), (4, 3.0)]).unwrap();
        let b = LevelEnergies::from_values(1, 5, &[(4, 3.0), (2, 1.0), (3, 2.0)]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.levels(), (2, 4));
        assert_eq!(a.count(), 3);
        assert_eq!(a.chi_square_dof(), 32.0);
    }

    #[test]
    fn level_range_validation() {
        let haar = WaveletFilter::haar();
        let s = signal(&(0..32).map(|i| (i as f64).sin() + i as f64).collect::<Vec<_>>());
        let d = ndwt_decompose(&s, 3, &haar).unwrap();
        assert!(level_energies(&d, 3, 2).is_err());
        assert!(level_energies(&d, 1, 4).is_err());
        assert!(level_energies(&d, 2, 4).is_ok());
    }
}
