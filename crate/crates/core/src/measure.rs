//! Positive discrete measures and the band-limited noisy Fourier measurement model.
//!
//! A measure `mu = sum_j a_j delta_{y_j}` is observed through
//! `Y(w) = sum_j a_j exp(i y_j w) + W(w)` on `M` evenly spaced frequencies
//! spanning `[-omega, omega]`, with `|W(w)| < sigma`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default dense-grid size for continuum sup-norm approximations.
pub const DEFAULT_GRID_DENSITY: usize = 4096;

/// Noise draws live on a disc of radius `sigma * NOISE_RADIUS_FACTOR` so the bound is strict.
const NOISE_RADIUS_FACTOR: f64 = 1.0 - 1e-9;

/// Anything with a Fourier transform `w -> sum_j a_j exp(i t_j w)`.
pub trait FourierTransform {
    fn atoms(&self) -> Box<dyn Iterator<Item = (f64, f64)> + '_>;

    fn transform_at(&self, omega: f64) -> Complex64 {
        self.atoms()
            .map(|(t, a)| Complex64::from_polar(a, t * omega))
            .sum()
    }
}

/// A positive point-source configuration with strictly increasing supports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawMeasure", into = "RawMeasure")]
pub struct DiscreteMeasure {
    supports: Vec<f64>,
    amplitudes: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMeasure {
    supports: Vec<f64>,
    amplitudes: Vec<f64>,
}

impl TryFrom<RawMeasure> for DiscreteMeasure {
    type Error = Error;

    fn try_from(raw: RawMeasure) -> Result<Self> {
        if raw.supports.is_empty() && raw.amplitudes.is_empty() {
            return Ok(Self::zero());
        }
        Self::new(raw.supports, raw.amplitudes)
    }
}

impl From<DiscreteMeasure> for RawMeasure {
    fn from(m: DiscreteMeasure) -> Self {
        RawMeasure {
            supports: m.supports,
            amplitudes: m.amplitudes,
        }
    }
}

impl DiscreteMeasure {
    /// Builds a measure from (support, amplitude) lists. Atoms are sorted by support;
    /// duplicate supports, non-finite values and non-positive amplitudes are rejected.
    pub fn new(supports: Vec<f64>, amplitudes: Vec<f64>) -> Result<Self> {
        if supports.is_empty() {
            return Err(Error::InvalidMeasure("a measure needs at least one source".into()));
        }
        if supports.len() != amplitudes.len() {
            return Err(Error::InvalidMeasure(format!(
                "{} supports but {} amplitudes",
                supports.len(),
                amplitudes.len()
            )));
        }
        if supports.iter().chain(&amplitudes).any(|v| !v.is_finite()) {
            return Err(Error::InvalidMeasure("non-finite value".into()));
        }
        if let Some(a) = amplitudes.iter().find(|&&a| a <= 0.0) {
            return Err(Error::InvalidMeasure(format!("amplitude {a} is not positive")));
        }
        let mut atoms: Vec<(f64, f64)> = supports.into_iter().zip(amplitudes).collect();
        atoms.sort_by(|x, y| x.0.total_cmp(&y.0));
        if atoms.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidMeasure("supports must be pairwise distinct".into()));
        }
        let (supports, amplitudes) = atoms.into_iter().unzip();
        Ok(Self {
            supports,
            amplitudes,
        })
    }

    /// The zero measure. It is the only measure with no atoms and only arises as
    /// the cardinality-0 solution of the sparse oracle.
    pub fn zero() -> Self {
        Self {
            supports: Vec::new(),
            amplitudes: Vec::new(),
        }
    }

    pub fn supports(&self) -> &[f64] {
        &self.supports
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amplitudes
    }

    pub fn len(&self) -> usize {
        self.supports.len()
    }

    pub fn is_empty(&self) -> bool {
        self.supports.is_empty()
    }

    /// Smallest amplitude; `None` for the zero measure.
    pub fn m_min(&self) -> Option<f64> {
        self.amplitudes.iter().copied().reduce(f64::min)
    }

    /// Minimum pairwise separation; `None` when there are fewer than two sources.
    pub fn d_min(&self) -> Option<f64> {
        // supports are sorted, so the minimum gap is between neighbours
        self.supports
            .windows(2)
            .map(|w| w[1] - w[0])
            .reduce(f64::min)
    }

    /// Super-resolution factor `pi / (omega * d_min)`.
    pub fn srf(&self, omega: f64) -> Option<f64> {
        self.d_min().map(|d| PI / (omega * d))
    }

    /// Shifts every support by `c`.
    pub fn translated(&self, c: f64) -> Self {
        Self {
            supports: self.supports.iter().map(|y| y + c).collect(),
            amplitudes: self.amplitudes.clone(),
        }
    }
}

impl FourierTransform for DiscreteMeasure {
    fn atoms(&self) -> Box<dyn Iterator<Item = (f64, f64)> + '_> {
        Box::new(self.supports.iter().copied().zip(self.amplitudes.iter().copied()))
    }
}

/// Cutoff frequency, number of samples and noise bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasurementConfig {
    pub omega: f64,
    pub m_samples: usize,
    pub sigma: f64,
}

impl MeasurementConfig {
    pub fn new(omega: f64, m_samples: usize, sigma: f64) -> Result<Self> {
        let cfg = Self {
            omega,
            m_samples,
            sigma,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// `M = 2 * s_max + 1` with `s_max = 2n`, enough for the Hankel sweep to reach `s = 2n`.
    pub fn default_for(n: usize, omega: f64, sigma: f64) -> Result<Self> {
        Self::new(omega, 4 * n.max(1) + 1, sigma)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega.is_finite() && self.omega > 0.0) {
            return Err(Error::InvalidConfig(format!("omega = {} must be positive", self.omega)));
        }
        if self.m_samples < 3 || self.m_samples % 2 == 0 {
            return Err(Error::InvalidConfig(format!(
                "m_samples = {} must be odd and at least 3",
                self.m_samples
            )));
        }
        if !(self.sigma.is_finite() && self.sigma >= 0.0) {
            return Err(Error::InvalidConfig(format!("sigma = {} must be >= 0", self.sigma)));
        }
        Ok(())
    }

    /// Evenly spaced sample frequencies; the endpoints are exactly `-omega`, `omega` and the
    /// midpoint is exactly zero, so `frequencies[M-1-m] == -frequencies[m]`.
    pub fn frequencies(&self) -> Vec<f64> {
        let last = (self.m_samples - 1) as f64;
        (0..self.m_samples)
            .map(|m| self.omega * (2.0 * m as f64 - last) / last)
            .collect()
    }

    /// Frequency sample spacing `2 omega / (M - 1)`.
    pub fn spacing(&self) -> f64 {
        2.0 * self.omega / (self.m_samples - 1) as f64
    }
}

/// Sampled (possibly noisy) Fourier data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawMeasurement", into = "RawMeasurement")]
pub struct FourierMeasurement {
    pub config: MeasurementConfig,
    pub frequencies: Vec<f64>,
    pub values: Vec<Complex64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMeasurement {
    omega: f64,
    sigma: f64,
    frequencies: Vec<f64>,
    values: Vec<[f64; 2]>,
}

impl TryFrom<RawMeasurement> for FourierMeasurement {
    type Error = Error;

    fn try_from(raw: RawMeasurement) -> Result<Self> {
        let config = MeasurementConfig::new(raw.omega, raw.frequencies.len(), raw.sigma)?;
        if raw.values.len() != raw.frequencies.len() {
            return Err(Error::InvalidConfig(format!(
                "{} values for {} frequencies",
                raw.values.len(),
                raw.frequencies.len()
            )));
        }
        let expected = config.frequencies();
        let tol = 1e-9 * config.omega;
        if raw
            .frequencies
            .iter()
            .zip(&expected)
            .any(|(a, b)| (a - b).abs() > tol)
        {
            return Err(Error::InvalidConfig(
                "frequencies must be evenly spaced from -omega to omega".into(),
            ));
        }
        Ok(Self {
            config,
            frequencies: expected,
            values: raw.values.iter().map(|v| Complex64::new(v[0], v[1])).collect(),
        })
    }
}

impl From<FourierMeasurement> for RawMeasurement {
    fn from(m: FourierMeasurement) -> Self {
        RawMeasurement {
            omega: m.config.omega,
            sigma: m.config.sigma,
            frequencies: m.frequencies,
            values: m.values.iter().map(|v| [v.re, v.im]).collect(),
        }
    }
}

impl FourierMeasurement {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Same samples with a different declared noise bound.
    pub fn with_sigma(mut self, sigma: f64) -> Self {
        self.config.sigma = sigma;
        self
    }
}

/// The cluster interval `[-(n-1) pi / (2 omega), (n-1) pi / (2 omega)]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClusterInterval {
    pub n: usize,
    pub omega: f64,
    pub half_width: f64,
}

impl ClusterInterval {
    pub fn new(n: usize, omega: f64) -> Self {
        Self {
            n,
            omega,
            half_width: (n.saturating_sub(1)) as f64 * PI / (2.0 * omega),
        }
    }

    pub fn length(&self) -> f64 {
        2.0 * self.half_width
    }

    pub fn contains(&self, y: f64) -> bool {
        y.abs() <= self.half_width
    }
}

/// Noiseless samples `Y(w_m) = sum_j a_j exp(i y_j w_m)`.
pub fn fourier_forward(mu: &DiscreteMeasure, config: &MeasurementConfig) -> FourierMeasurement {
    let frequencies = config.frequencies();
    let values = frequencies.iter().map(|&w| mu.transform_at(w)).collect();
    FourierMeasurement {
        config: *config,
        frequencies,
        values,
    }
}

/// Adds independent noise drawn uniformly from the complex disc of radius
/// `sigma (1 - 1e-9)`, so every perturbation has modulus strictly below `sigma`.
/// The output records `sigma` as its noise bound.
pub fn add_bounded_noise(meas: &FourierMeasurement, sigma: f64, seed: u64) -> FourierMeasurement {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    add_bounded_noise_with(meas, sigma, &mut rng)
}

/// [`add_bounded_noise`] driven by a caller-owned generator.
pub fn add_bounded_noise_with<R: Rng + ?Sized>(
    meas: &FourierMeasurement,
    sigma: f64,
    rng: &mut R,
) -> FourierMeasurement {
    let mut out = meas.clone();
    out.config.sigma = sigma;
    if sigma <= 0.0 {
        return out;
    }
    let radius = sigma * NOISE_RADIUS_FACTOR;
    for v in &mut out.values {
        let r = radius * rng.gen::<f64>().sqrt();
        let theta = 2.0 * PI * rng.gen::<f64>();
        *v += Complex64::from_polar(r, theta);
    }
    out
}

/// Maximum of `|F f(w) - F g(w)|` over `grid_density` evenly spaced points of
/// `[-omega, omega]`. This is a lower bound on the continuum sup-norm.
pub fn sup_norm_gap<F, G>(f: &F, g: &G, omega: f64, grid_density: usize) -> f64
where
    F: FourierTransform + ?Sized,
    G: FourierTransform + ?Sized,
{
    let density = grid_density.max(2);
    let last = (density - 1) as f64;
    (0..density)
        .map(|k| {
            let w = omega * (2.0 * k as f64 - last) / last;
            (f.transform_at(w) - g.transform_at(w)).norm()
        })
        .fold(0.0, f64::max)
}

/// Max-modulus residual of `candidate` against the samples.
pub fn sample_residual(candidate: &DiscreteMeasure, meas: &FourierMeasurement) -> f64 {
    meas.frequencies
        .iter()
        .zip(&meas.values)
        .map(|(&w, y)| (candidate.transform_at(w) - y).norm())
        .fold(0.0, f64::max)
}

/// Discrete admissibility: `max_m |F candidate(w_m) - Y(w_m)| < sigma` at the sample frequencies.
pub fn is_sigma_admissible(candidate: &DiscreteMeasure, meas: &FourierMeasurement) -> bool {
    sample_residual(candidate, meas) < meas.config.sigma
}

/// Continuum admissibility against a known generating measure, checked on a dense grid.
pub fn is_sigma_admissible_dense<G: FourierTransform + ?Sized>(
    candidate: &DiscreteMeasure,
    truth: &G,
    omega: f64,
    sigma: f64,
    grid_density: usize,
) -> bool {
    sup_norm_gap(candidate, truth, omega, grid_density) < sigma
}

/// True iff every candidate support lies in exactly one open interval `(y_k - delta, y_k + delta)`
/// and every interval holds exactly one candidate support.
pub fn is_in_delta_neighborhood(
    candidate: &DiscreteMeasure,
    truth: &DiscreteMeasure,
    delta: f64,
) -> Result<bool> {
    if !(delta > 0.0) {
        return Err(Error::InvalidArgs(format!("delta = {delta} must be positive")));
    }
    if let Some(d) = truth.d_min() {
        if delta > d / 2.0 {
            return Err(Error::OverlappingIntervals {
                delta,
                half_dmin: d / 2.0,
            });
        }
    }
    if candidate.len() != truth.len() {
        return Ok(false);
    }
    let mut hits = vec![0usize; truth.len()];
    for &c in candidate.supports() {
        let inside: Vec<usize> = truth
            .supports()
            .iter()
            .enumerate()
            .filter(|(_, &y)| (c - y).abs() < delta)
            .map(|(k, _)| k)
            .collect();
        if inside.len() != 1 {
            return Ok(false);
        }
        hits[inside[0]] += 1;
    }
    Ok(hits.iter().all(|&h| h == 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn mu(s: &[f64], a: &[f64]) -> DiscreteMeasure {
        DiscreteMeasure::new(s.to_vec(), a.to_vec()).unwrap()
    }

    #[test]
    fn measure_rejects_bad_input() {
        assert!(DiscreteMeasure::new(vec![0.0], vec![0.0]).is_err());
        assert!(DiscreteMeasure::new(vec![0.0, 0.0], vec![1.0, 1.0]).is_err());
        assert!(DiscreteMeasure::new(vec![0.0], vec![1.0, 2.0]).is_err());
        assert!(DiscreteMeasure::new(vec![], vec![]).is_err());
        assert!(DiscreteMeasure::new(vec![f64::NAN], vec![1.0]).is_err());
    }

    #[test]
    fn measure_is_sorted_and_reports_minima() {
        let m = mu(&[0.5, -1.0, 2.0], &[3.0, 1.5, 2.0]);
        assert_eq!(m.supports(), &[-1.0, 0.5, 2.0]);
        assert_eq!(m.amplitudes(), &[1.5, 3.0, 2.0]);
        assert_eq!(m.m_min(), Some(1.5));
        assert_eq!(m.d_min(), Some(1.5));
        assert_eq!(mu(&[1.0], &[1.0]).d_min(), None);
    }

    #[test]
    fn config_validation() {
        assert!(MeasurementConfig::new(1.0, 4, 0.1).is_err());
        assert!(MeasurementConfig::new(1.0, 1, 0.1).is_err());
        assert!(MeasurementConfig::new(0.0, 5, 0.1).is_err());
        assert!(MeasurementConfig::new(1.0, 5, -0.1).is_err());
        let f = MeasurementConfig::new(2.0, 5, 0.0).unwrap().frequencies();
        assert_eq!(f, vec![-2.0, -1.0, 0.0, 1.0, 2.0]);
    }

    #[test]
    fn single_source_at_origin_is_constant() {
        let cfg = MeasurementConfig::new(1.0, 5, 0.0).unwrap();
        let meas = fourier_forward(&mu(&[0.0], &[1.0]), &cfg);
        for v in &meas.values {
            assert_eq!(*v, Complex64::new(1.0, 0.0));
        }
    }

    #[test]
    fn symmetric_pair_is_real_cosine() {
        let y0 = 0.7;
        let cfg = MeasurementConfig::new(1.5, 11, 0.0).unwrap();
        let meas = fourier_forward(&mu(&[-y0, y0], &[1.0, 1.0]), &cfg);
        for (w, v) in meas.frequencies.iter().zip(&meas.values) {
            assert_relative_eq!(v.re, 2.0 * (y0 * w).cos(), epsilon = 1e-14);
            assert!(v.im.abs() < 1e-14);
        }
    }

    #[test]
    fn pair_minus_merged_matches_sine_squared() {
        let tau = 0.3;
        let pair = mu(&[-tau, tau], &[1.0, 1.0]);
        let merged = mu(&[0.0], &[2.0]);
        let cfg = MeasurementConfig::new(2.0, 21, 0.0).unwrap();
        let a = fourier_forward(&pair, &cfg);
        let b = fourier_forward(&merged, &cfg);
        for ((w, x), y) in a.frequencies.iter().zip(&a.values).zip(&b.values) {
            let closed = -4.0 * (tau * w / 2.0).sin().powi(2);
            assert_relative_eq!((x - y).re, closed, epsilon = 1e-14);
        }
    }

    #[test]
    fn zero_noise_is_identity_and_noise_is_bounded() {
        let cfg = MeasurementConfig::new(1.0, 9, 0.0).unwrap();
        let meas = fourier_forward(&mu(&[-0.4, 0.3], &[1.0, 2.0]), &cfg);
        assert_eq!(add_bounded_noise(&meas, 0.0, 3).values, meas.values);
        let noisy = add_bounded_noise(&meas, 0.1, 3);
        let worst = noisy
            .values
            .iter()
            .zip(&meas.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(worst < 0.1);
        assert_eq!(noisy, add_bounded_noise(&meas, 0.1, 3));
        assert_ne!(noisy, add_bounded_noise(&meas, 0.1, 4));
    }

    #[test]
    fn sup_norm_gap_closed_forms() {
        let tau = 0.03679;
        let pair = mu(&[-tau, tau], &[1.0, 1.0]);
        let merged = mu(&[0.0], &[2.0]);
        assert_eq!(sup_norm_gap(&pair, &pair, 1.0, 4096), 0.0);
        let gap = sup_norm_gap(&pair, &merged, 1.0, 4096);
        assert_relative_eq!(gap, 4.0 * (tau / 2.0).sin().powi(2), max_relative = 1e-10);
        assert_relative_eq!(gap, 1.354e-3, max_relative = 1e-3);

        let f = mu(&[-1.5 * tau, 0.5 * tau], &[1.0, 3.0]);
        let g = mu(&[-0.5 * tau, 1.5 * tau], &[3.0, 1.0]);
        let gap = sup_norm_gap(&f, &g, 1.0, 4096);
        assert_relative_eq!(gap, 8.0 * (tau / 2.0).sin().powi(3), max_relative = 1e-8);
    }

    #[test]
    fn grid_refinement_changes_gap_by_less_than_one_percent() {
        let f = mu(&[-1.1, 0.2, 0.9], &[1.0, 2.0, 1.5]);
        let g = mu(&[-1.0, 0.25, 1.0], &[1.2, 1.8, 1.4]);
        let coarse = sup_norm_gap(&f, &g, 3.0, DEFAULT_GRID_DENSITY);
        let fine = sup_norm_gap(&f, &g, 3.0, 2 * DEFAULT_GRID_DENSITY);
        assert!((fine - coarse).abs() / fine < 0.01);
    }

    #[test]
    fn admissibility() {
        let truth = mu(&[-0.5, 0.5], &[1.0, 2.0]);
        let cfg = MeasurementConfig::new(1.0, 9, 0.01).unwrap();
        let meas = fourier_forward(&truth, &cfg);
        assert!(is_sigma_admissible(&truth, &meas));
        let doubled = mu(&[-0.5, 0.5], &[2.0, 2.0]);
        assert!(!is_sigma_admissible(&doubled, &meas));
        assert!(is_sigma_admissible_dense(&truth, &truth, 1.0, 0.01, 4096));
    }

    #[test]
    fn delta_neighborhood_cases() {
        let tau = 0.2;
        let truth = mu(&[-tau, tau], &[1.0, 1.0]);
        assert!(is_in_delta_neighborhood(&truth, &truth, 0.1).unwrap());
        let eps = 0.05;
        let cand = mu(&[-tau + eps, tau - eps], &[1.0, 1.0]);
        assert!(is_in_delta_neighborhood(&cand, &truth, 0.1).unwrap());
        let both_left = mu(&[-tau, -tau + eps], &[1.0, 1.0]);
        assert!(!is_in_delta_neighborhood(&both_left, &truth, 0.1).unwrap());
        assert!(matches!(
            is_in_delta_neighborhood(&truth, &truth, 0.3),
            Err(Error::OverlappingIntervals { .. })
        ));
        let one = mu(&[0.0], &[1.0]);
        assert!(!is_in_delta_neighborhood(&one, &truth, 0.1).unwrap());
    }

    #[test]
    fn json_shapes() {
        let m = mu(&[-1.0, 1.0], &[1.0, 2.0]);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"supports":[-1.0,1.0],"amplitudes":[1.0,2.0]}"#);
        assert!(serde_json::from_str::<DiscreteMeasure>(r#"{"supports":[0],"amplitudes":[-1]}"#).is_err());

        let cfg = MeasurementConfig::new(1.0, 3, 0.5).unwrap();
        let meas = fourier_forward(&m, &cfg);
        let v: serde_json::Value = serde_json::to_value(&meas).unwrap();
        assert_eq!(v["omega"], 1.0);
        assert_eq!(v["sigma"], 0.5);
        assert_eq!(v["values"].as_array().unwrap().len(), 3);
        assert_eq!(v["values"][0].as_array().unwrap().len(), 2);
        let back: FourierMeasurement = serde_json::from_value(v).unwrap();
        assert_eq!(back, meas);
    }

    #[test]
    fn cluster_interval_width() {
        let c = ClusterInterval::new(3, 2.0);
        assert_eq!(c.half_width, 2.0 * PI / 4.0);
        assert!(c.contains(c.half_width));
        assert!(!c.contains(c.half_width + 1e-9));
    }
}
