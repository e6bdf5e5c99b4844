//! Orthonormal wavelet filter bank: Haar and the Daubechies family.

use crate::error::{Error, Result};

/// Acceptable deviation of the lowpass l2 norm from 1.
const NORM_TOLERANCE: f64 = 1e-12;

/// Daubechies scaling (lowpass) filters with 1..=8 vanishing moments, unit
/// l2 norm, in ascending-index order. db1 is Haar.
const DAUBECHIES_LOWPASS: [&[f64]; 8] = [
    &[
        std::f64::consts::FRAC_1_SQRT_2,
        std::f64::consts::FRAC_1_SQRT_2,
    ],
    &[
        0.48296291314453416,
        0.8365163037378079,
        0.2241438680420134,
        -0.12940952255126037,
    ],
    &[
        0.33267055295008263,
        0.8068915093110925,
        0.45987750211849154,
        -0.13501102001025458,
        -0.08544127388202666,
        0.03522629188570953,
    ],
    &[
        0.2303778133088965,
        0.7148465705529157,
        0.6308807679298589,
        -0.027983769416859854,
        -0.18703481171909309,
        0.030841381835560764,
        0.0328830116668852,
        -0.010597401785069032,
    ],
    &[
        0.16010239797419293,
        0.6038292697971896,
        0.7243085284377729,
        0.13842814590132074,
        -0.24229488706638203,
        -0.032244869584638375,
        0.07757149384004572,
        -0.006241490212798274,
        -0.012580751999081999,
        0.0033357252854737712,
    ],
    &[
        0.11154074335010947,
        0.49462389039845306,
        0.7511339080210954,
        0.31525035170919763,
        -0.22626469396543983,
        -0.12976686756726194,
        0.09750160558732304,
        0.027522865530305727,
        -0.03158203931748603,
        0.0005538422011614961,
        0.004777257510945511,
        -0.0010773010853084796,
    ],
    &[
        0.07785205408500918,
        0.3965393194819173,
        0.7291320908462351,
        0.4697822874051931,
        -0.14390600392856498,
        -0.22403618499387498,
        0.07130921926683026,
        0.08061260915108308,
        -0.03802993693501441,
        -0.01657454163066688,
        0.01255099855609984,
        0.0004295779729213665,
        -0.0018016407040474908,
        0.00035371379997452024,
    ],
    &[
        0.05441584224310401,
        0.31287159091429995,
        0.6756307362972898,
        0.5853546836542067,
        -0.015829105256349306,
        -0.2840155429615469,
        0.0004724845739132828,
        0.12874742662047847,
        -0.017369301001807547,
        -0.044088253930794755,
        0.013981027917398282,
        0.008746094047405777,
        -0.004870352993451574,
        -0.00039174037337694705,
        0.0006754494064505693,
        -0.00011747678412476953,
    ],
];

/// Quadrature-mirror filter pair used for analysis.
///
/// The highpass is derived from the lowpass by the mirror rule
/// `highpass[k] = (-1)^k * lowpass[L-1-k]`.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveletFilter {
    name: String,
    lowpass: Vec<f64>,
    highpass: Vec<f64>,
    vanishing_moments: usize,
}

impl WaveletFilter {
    /// Haar filter, the shortest member of the Daubechies family.
    pub fn haar() -> Self {
        Self::daubechies(1).expect("db1 table entry exists")
    }

    /// Daubechies filter with the given number of vanishing moments (1..=8).
    pub fn daubechies(vanishing_moments: usize) -> Result<Self> {
        if !(1..=DAUBECHIES_LOWPASS.len()).contains(&vanishing_moments) {
            return Err(Error::InvalidArgument(format!(
                "Daubechies order {vanishing_moments} unsupported; available: 1..={}",
                DAUBECHIES_LOWPASS.len()
            )));
        }
        let name = if vanishing_moments == 1 {
            "haar".to_string()
        } else {
            format!("db{vanishing_moments}")
        };
        Self::from_lowpass(
            name,
            DAUBECHIES_LOWPASS[vanishing_moments - 1].to_vec(),
            vanishing_moments,
        )
    }

    /// Parse a filter name: `haar`, or `db1`..`db8`.
    pub fn from_name(name: &str) -> Result<Self> {
        let lowered = name.to_ascii_lowercase();
        if lowered == "haar" {
            return Ok(Self::haar());
        }
        if let Some(order) = lowered.strip_prefix("db") {
            if let Ok(order) = order.parse::<usize>() {
                return Self::daubechies(order);
            }
        }
        Err(Error::InvalidArgument(format!(
            "unknown wavelet '{name}'; expected 'haar' or 'db1'..'db{}'",
            DAUBECHIES_LOWPASS.len()
        )))
    }

    /// Build a filter pair from an explicit unit-norm lowpass.
    pub fn from_lowpass(
        name: impl Into<String>,
        lowpass: Vec<f64>,
        vanishing_moments: usize,
    ) -> Result<Self> {
        if lowpass.len() < 2 {
            return Err(Error::InvalidArgument(
                "lowpass filter needs at least 2 taps".to_string(),
            ));
        }
        let norm = lowpass.iter().map(|x| x * x).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::InvalidArgument(format!(
                "lowpass filter must have unit l2 norm, got {norm}"
            )));
        }
        let len = lowpass.len();
        let highpass = (0..len)
            .map(|k| {
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                sign * lowpass[len - 1 - k]
            })
            .collect();
        Ok(Self {
            name: name.into(),
            lowpass,
            highpass,
            vanishing_moments,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn lowpass(&self) -> &[f64] {
        &self.lowpass
    }

    pub fn highpass(&self) -> &[f64] {
        &self.highpass
    }

    pub fn len(&self) -> usize {
        self.lowpass.len()
    }

    pub fn is_empty(&self) -> bool {
        false // at least 2 taps by construction
    }

    pub fn vanishing_moments(&self) -> usize {
        self.vanishing_moments
    }
}
