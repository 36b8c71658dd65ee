//! MUSIC location recovery: noise-space imaging, peak selection and the
//! stable-recovery protocol.

use std::f64::consts::{E, PI};
use std::fmt::Write as _;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{projection_norm, trailing_left_basis, CMatrix};
use crate::measure::{DiscreteMeasure, FourierMeasurement};

pub const DEFAULT_PCR: usize = 3;
pub const DEFAULT_DCR: usize = 2;
pub const DEFAULT_DCT_FACTOR: f64 = 1.0;

/// Test-point window `[start, end]` sampled with step `step`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MusicWindow {
    pub start: f64,
    pub end: f64,
    pub step: f64,
}

impl MusicWindow {
    pub fn new(start: f64, end: f64, step: f64) -> Result<Self> {
        let w = Self { start, end, step };
        w.validate()?;
        Ok(w)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.start.is_finite() && self.end.is_finite() && self.start < self.end) {
            return Err(Error::InvalidArgs(format!(
                "window needs finite start < end, got [{}, {}]",
                self.start, self.end
            )));
        }
        if !(self.step.is_finite() && self.step > 0.0) {
            return Err(Error::InvalidArgs(format!("window step must be > 0, got {}", self.step)));
        }
        Ok(())
    }

    /// Covers the cluster interval of `n` sources with a `2/omega` margin on each side.
    /// The step is `d_min/50` when the separation is known and `(pi/omega)/200` otherwise.
    pub fn default_for(n: usize, omega: f64, d_min: Option<f64>) -> Self {
        let half = (n.max(1) - 1) as f64 * PI / (2.0 * omega) + 2.0 / omega;
        let step = match d_min {
            Some(d) if d > 0.0 && d.is_finite() => d / 50.0,
            _ => PI / omega / 200.0,
        };
        Self {
            start: -half,
            end: half,
            step,
        }
    }

    pub fn points(&self) -> Vec<f64> {
        let count = ((self.end - self.start) / self.step + 1e-9).floor() as usize + 1;
        (0..count).map(|k| self.start + k as f64 * self.step).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MusicImage {
    pub test_points: Vec<f64>,
    pub values: Vec<f64>,
    pub spacing_h: f64,
    /// Model order used to split signal and noise spaces.
    pub n: usize,
    /// Singular values of the measurement Hankel, descending.
    pub singular_values: Vec<f64>,
}

impl MusicImage {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,J\n");
        for (x, v) in self.test_points.iter().zip(&self.values) {
            let _ = writeln!(out, "{x:.16e},{v:.16e}");
        }
        out
    }
}

fn hankel_size(m_samples: usize) -> usize {
    (m_samples.saturating_sub(1)) / 2 + 1
}

/// Noise space `U_2` of the `(M^+1) x (M^+1)` Hankel `H[p][q] = Y(omega_{p+q})` as a
/// matrix of column vectors, together with the singular values.
fn noise_space(meas: &FourierMeasurement, n: usize) -> Result<(CMatrix, Vec<f64>)> {
    if meas.len() < 3 {
        return Err(Error::InsufficientSamples(format!(
            "MUSIC needs at least 3 samples, got {}",
            meas.len()
        )));
    }
    if n == 0 {
        return Err(Error::InvalidArgs("model order n must be at least 1".into()));
    }
    // n < M^ + 1 is equivalent to M >= 2n + 1.
    let dim = hankel_size(meas.len());
    if n >= dim {
        return Err(Error::DegenerateNoiseSpace { n, dim });
    }
    let h = CMatrix::from_fn(dim, dim, |p, q| meas.values[p + q]);
    let (sv, basis) = trailing_left_basis(&h, n)?;
    Ok((basis, sv))
}

/// `Phi(x) = (1, e^{ihx}, ..., e^{i M^ h x})`.
fn steering(dim: usize, h: f64, x: f64) -> Vec<Complex64> {
    (0..dim)
        .map(|k| Complex64::from_polar(1.0, k as f64 * h * x))
        .collect()
}

/// `||U_2^* Phi(y)||` at each point, for checking the signal/noise split directly.
pub fn noise_projection_norms(meas: &FourierMeasurement, n: usize, points: &[f64]) -> Result<Vec<f64>> {
    let (u2, _) = noise_space(meas, n)?;
    let h = meas.config.spacing();
    let dim = hankel_size(meas.len());
    Ok(points
        .iter()
        .map(|&x| projection_norm(&u2, &steering(dim, h, x)))
        .collect())
}

/// Imaging functional `J(x) = ||Phi(x)|| / ||U_2^* Phi(x)||` on the window's test points.
pub fn music_image(meas: &FourierMeasurement, n: usize, window: &MusicWindow) -> Result<MusicImage> {
    window.validate()?;
    let (u2, singular_values) = noise_space(meas, n)?;
    let h = meas.config.spacing();
    let dim = hankel_size(meas.len());
    let phi_norm = (dim as f64).sqrt();
    let floor = f64::EPSILON * phi_norm;
    let test_points = window.points();
    let values = test_points
        .par_iter()
        .map(|&x| phi_norm / projection_norm(&u2, &steering(dim, h, x)).max(floor))
        .collect();
    Ok(MusicImage {
        test_points,
        values,
        spacing_h: h,
        n,
        singular_values,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PeakSelectionParams {
    pub pcr: usize,
    pub dcr: usize,
    pub dct: f64,
}

impl PeakSelectionParams {
    pub fn new(pcr: usize, dcr: usize, dct: f64) -> Result<Self> {
        if pcr == 0 || !(dct.is_finite() && dct >= 0.0) {
            return Err(Error::InvalidArgs(format!(
                "peak selection needs pcr >= 1 and finite dct >= 0 (pcr = {pcr}, dct = {dct})"
            )));
        }
        Ok(Self { pcr, dcr, dct })
    }

    /// Default ranges with `dct` set to a multiple of the median absolute slope of `image`.
    pub fn default_for(image: &MusicImage) -> Self {
        Self {
            pcr: DEFAULT_PCR,
            dcr: DEFAULT_DCR,
            dct: DEFAULT_DCT_FACTOR * median(&abs_slopes(image)),
        }
    }
}

/// `|f'|` per index: forward difference quotient, backward at the last index.
fn abs_slopes(image: &MusicImage) -> Vec<f64> {
    let f = &image.values;
    let x = &image.test_points;
    let n = f.len();
    if n < 2 {
        return vec![0.0; n];
    }
    (0..n)
        .map(|j| {
            let (a, b) = if j + 1 < n { (j, j + 1) } else { (j - 1, j) };
            ((f[b] - f[a]) / (x[b] - x[a])).abs()
        })
        .collect()
}

fn median(v: &[f64]) -> f64 {
    if v.is_empty() {
        return 0.0;
    }
    let mut s = v.to_vec();
    s.sort_by(f64::total_cmp);
    let mid = s.len() / 2;
    if s.len() % 2 == 1 {
        s[mid]
    } else {
        0.5 * (s[mid - 1] + s[mid])
    }
}

/// Local maxima over `±pcr` indices whose slope magnitude within `±dcr` reaches `dct`.
/// Among equal maxima in a window the leftmost wins; a flat window yields no peak.
pub fn select_peaks(image: &MusicImage, params: &PeakSelectionParams) -> Vec<f64> {
    let f = &image.values;
    let n = f.len();
    if n == 0 {
        return Vec::new();
    }
    let slopes = abs_slopes(image);
    let mut peaks = Vec::new();
    for j in 0..n {
        let lo = j.saturating_sub(params.pcr);
        let hi = (j + params.pcr).min(n - 1);
        let window = &f[lo..=hi];
        let is_max = f[lo..j].iter().all(|&v| v < f[j]) && f[j..=hi].iter().all(|&v| v <= f[j]);
        let flat = window.iter().all(|&v| v == f[j]);
        if !is_max || flat {
            continue;
        }
        let dlo = j.saturating_sub(params.dcr);
        let dhi = (j + params.dcr).min(n - 1);
        let sharp = slopes[dlo..=dhi].iter().fold(0.0f64, |a, &b| a.max(b));
        if sharp >= params.dct {
            peaks.push(image.test_points[j]);
        }
    }
    peaks
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Recovery {
    Stable,
    Unstable,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub verdict: Recovery,
    pub peaks: Vec<f64>,
    /// `max_j |y^_j - y_j|` when the peak count matches.
    pub max_error: Option<f64>,
    pub d_min: f64,
}

/// Runs MUSIC with the default window and peak parameters and applies the
/// `max_j |y^_j - y_j| < d_min / 2` stability criterion.
pub fn run_single_experiment_detailed(
    mu: &DiscreteMeasure,
    meas: &FourierMeasurement,
    n: usize,
) -> Result<ExperimentReport> {
    if mu.len() != n || n < 2 {
        return Err(Error::InvalidArgs(format!(
            "experiment needs n >= 2 sources matching n, got {} sources and n = {n}",
            mu.len()
        )));
    }
    let d_min = mu.d_min().expect("at least two sources");
    let window = MusicWindow::default_for(n, meas.config.omega, Some(d_min));
    let image = music_image(meas, n, &window)?;
    let peaks = select_peaks(&image, &PeakSelectionParams::default_for(&image));
    let max_error = (peaks.len() == n).then(|| {
        peaks
            .iter()
            .zip(mu.supports())
            .map(|(p, y)| (p - y).abs())
            .fold(0.0, f64::max)
    });
    let verdict = match max_error {
        Some(e) if e < d_min / 2.0 => Recovery::Stable,
        _ => Recovery::Unstable,
    };
    Ok(ExperimentReport {
        verdict,
        peaks,
        max_error,
        d_min,
    })
}

pub fn run_single_experiment(
    mu: &DiscreteMeasure,
    meas: &FourierMeasurement,
    n: usize,
) -> Result<Recovery> {
    run_single_experiment_detailed(mu, meas, n).map(|r| r.verdict)
}

/// Closed-form resolution limits for number detection and support recovery.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeparationBounds {
    pub n: usize,
    pub omega: f64,
    pub sigma: f64,
    pub m_min: f64,
    pub num_lower: f64,
    pub num_upper: f64,
    pub supp_lower: f64,
    pub supp_upper: f64,
}

impl SeparationBounds {
    /// `ln C(n)` with `C(n) = n 2^{4n-2} e^{2n} pi^{-1/2}`.
    pub fn ln_error_constant(n: usize) -> f64 {
        (n as f64).ln() + (4 * n - 2) as f64 * 2f64.ln() + 2.0 * n as f64 - 0.5 * PI.ln()
    }

    /// Location-error bound `C(n)/omega * srf^{2n-2} * sigma/m_min`.
    pub fn supp_error_bound(&self, srf: f64) -> f64 {
        let ln = Self::ln_error_constant(self.n) + (2 * self.n - 2) as f64 * srf.ln()
            + (self.sigma / self.m_min).ln();
        ln.exp() / self.omega
    }
}

pub fn separation_bounds(n: usize, omega: f64, sigma: f64, m_min: f64) -> Result<SeparationBounds> {
    if !(sigma > 0.0 && sigma <= m_min && m_min.is_finite()) {
        return Err(Error::InvalidRatio { sigma, m_min });
    }
    if n < 2 || !(omega > 0.0 && omega.is_finite()) {
        return Err(Error::InvalidArgs(format!("need n >= 2 and omega > 0, got n = {n}, omega = {omega}")));
    }
    let r = sigma / m_min;
    let num = r.powf(1.0 / (2 * n - 2) as f64) / omega;
    let supp = r.powf(1.0 / (2 * n - 1) as f64) / omega;
    Ok(SeparationBounds {
        n,
        omega,
        sigma,
        m_min,
        num_lower: 2.0 / E * num,
        num_upper: 4.4 * PI * E * num,
        supp_lower: 2.0 / E * supp,
        supp_upper: 5.88 * PI * E * supp,
    })
}
