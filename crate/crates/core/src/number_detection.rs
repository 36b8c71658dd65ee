//! Source-number detection by thresholding the singular values of a decimated Hankel matrix.
//!
//! For a given `s`, the samples `z_t = -omega + (t - 1) omega / s`, `t = 1..2s+1`, fill the
//! `(s+1) x (s+1)` Hankel matrix `H[p][q] = Y(z_{p+q})`. Noise with `|W| < sigma` moves every
//! singular value by at most `(s+1) sigma`, so the count of singular values above that threshold
//! estimates the number of sources.

use serde::{Deserialize, Serialize};

use crate::constructions::ln_factorial;
use crate::error::{Error, Result};
use crate::linalg::{singular_values, CMatrix};
use crate::measure::FourierMeasurement;

/// `(s+1) x (s+1)` Hankel matrix of decimated samples.
#[derive(Debug, Clone)]
pub struct HankelMatrix {
    pub s: usize,
    pub entries: CMatrix,
}

/// Outcome of one fixed-`s` thresholding pass.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetectionReport {
    pub s: usize,
    pub singular_values: Vec<f64>,
    pub threshold: f64,
    pub estimated_n: usize,
}

/// Per-`s` outcome of the sweep; `s` values whose decimation does not land on
/// sample points are recorded as skipped.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SweepStep {
    Evaluated(DetectionReport),
    Skipped { s: usize },
}

impl SweepStep {
    pub fn report(&self) -> Option<&DetectionReport> {
        match self {
            SweepStep::Evaluated(r) => Some(r),
            SweepStep::Skipped { .. } => None,
        }
    }
}

/// Decimation stride `(M - 1) / 2s`, or `IncompatibleGrid` when it is not an integer.
pub fn decimation_stride(m_samples: usize, s: usize) -> Result<usize> {
    if s == 0 {
        return Err(Error::InvalidArgs("s must be at least 1".into()));
    }
    let m1 = m_samples.saturating_sub(1);
    if m1 < 2 * s || m1 % (2 * s) != 0 {
        return Err(Error::IncompatibleGrid {
            m_minus_one: m1,
            two_s: 2 * s,
        });
    }
    Ok(m1 / (2 * s))
}

pub fn assemble_hankel(meas: &FourierMeasurement, s: usize) -> Result<HankelMatrix> {
    let stride = decimation_stride(meas.len(), s)?;
    let entries = CMatrix::from_fn(s + 1, s + 1, |p, q| meas.values[(p + q) * stride]);
    Ok(HankelMatrix { s, entries })
}

fn report_from_values(s: usize, singular_values: Vec<f64>, sigma: f64) -> DetectionReport {
    let threshold = (s + 1) as f64 * sigma;
    let estimated_n = singular_values
        .iter()
        .rposition(|&v| v > threshold)
        .map_or(0, |j| j + 1);
    DetectionReport {
        s,
        singular_values,
        threshold,
        estimated_n,
    }
}

/// Fixed-`s` detection: the largest `j` with `sigma_j > (s+1) sigma`, or 0 if none.
pub fn detect_count_fixed_s(
    meas: &FourierMeasurement,
    s: usize,
    sigma: f64,
) -> Result<DetectionReport> {
    let h = assemble_hankel(meas, s)?;
    Ok(report_from_values(s, singular_values(&h.entries)?, sigma))
}

/// Sweeps `s = 1..=floor((M-1)/2)` and returns the largest detected count together with
/// every per-`s` step.
pub fn detect_count_sweep(meas: &FourierMeasurement, sigma: f64) -> Result<(usize, Vec<SweepStep>)> {
    let s_max = meas.len().saturating_sub(1) / 2;
    let steps: Vec<SweepStep> = (1..=s_max)
        .map(|s| match detect_count_fixed_s(meas, s, sigma) {
            Ok(r) => Ok(SweepStep::Evaluated(r)),
            Err(Error::IncompatibleGrid { .. }) => Ok(SweepStep::Skipped { s }),
            Err(e) => Err(e),
        })
        .collect::<Result<_>>()?;
    let n_max = steps
        .iter()
        .filter_map(SweepStep::report)
        .map(|r| r.estimated_n)
        .max()
        .unwrap_or(0);
    Ok((n_max, steps))
}

/// `zeta(n)`: `((n-1)/2)!^2` for odd `n`, `(n/2)! ((n-2)/2)!` for even `n`.
pub fn zeta(n: usize) -> f64 {
    if n % 2 == 1 {
        (2.0 * ln_factorial((n - 1) / 2)).exp()
    } else {
        (ln_factorial(n / 2) + ln_factorial((n - 2) / 2)).exp()
    }
}

/// Separation above which fixed-`s` detection provably returns `n`:
/// `pi s / omega * (2n (s+1) sigma / (zeta(n)^2 m_min))^{1/(2n-2)}`.
pub fn zeta_separation(n: usize, s: usize, sigma: f64, m_min: f64, omega: f64) -> Result<f64> {
    if n < 2 || s < n {
        return Err(Error::InvalidArgs(format!("need s >= n >= 2, got n = {n}, s = {s}")));
    }
    if !(sigma >= 0.0 && m_min > 0.0 && omega > 0.0) {
        return Err(Error::InvalidArgs(format!(
            "need sigma >= 0, m_min > 0, omega > 0 (sigma = {sigma}, m_min = {m_min}, omega = {omega})"
        )));
    }
    let z = zeta(n);
    let inner = 2.0 * n as f64 * (s + 1) as f64 * sigma / (z * z * m_min);
    Ok(std::f64::consts::PI * s as f64 / omega * inner.powf(1.0 / (2 * n - 2) as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::{fourier_forward, DiscreteMeasure, MeasurementConfig};
    use approx::assert_relative_eq;
    use num_complex::Complex64;

    fn meas(s: &[f64], a: &[f64], m: usize) -> FourierMeasurement {
        let mu = DiscreteMeasure::new(s.to_vec(), a.to_vec()).unwrap();
        fourier_forward(&mu, &MeasurementConfig::new(1.0, m, 0.0).unwrap())
    }

    #[test]
    fn s1_hankel_indexes_directly() {
        let m = meas(&[-0.3, 0.8], &[1.0, 2.0], 3);
        let h = assemble_hankel(&m, 1).unwrap();
        assert_eq!(h.entries[(0, 0)], m.values[0]);
        assert_eq!(h.entries[(0, 1)], m.values[1]);
        assert_eq!(h.entries[(1, 0)], m.values[1]);
        assert_eq!(h.entries[(1, 1)], m.values[2]);
    }

    #[test]
    fn hankel_structure_and_symmetry() {
        let m = meas(&[-0.3, 0.8], &[1.0, 2.0], 13);
        for s in [1, 2, 3, 6] {
            let h = assemble_hankel(&m, s).unwrap().entries;
            let stride = 12 / (2 * s);
            for p in 0..=s {
                for q in 0..=s {
                    assert_eq!(h[(p, q)], m.values[(p + q) * stride]);
                    if p >= 1 && q < s {
                        assert_eq!(h[(p, q)], h[(p - 1, q + 1)]);
                    }
                }
            }
        }
        assert!(matches!(assemble_hankel(&m, 5), Err(Error::IncompatibleGrid { .. })));
    }

    #[test]
    fn single_source_at_origin_gives_rank_one_ones_matrix() {
        let a = 2.5;
        let m = meas(&[0.0], &[a], 9);
        let h = assemble_hankel(&m, 4).unwrap();
        for p in 0..5 {
            for q in 0..5 {
                assert_eq!(h.entries[(p, q)], Complex64::new(a, 0.0));
            }
        }
        let r = detect_count_fixed_s(&m, 4, 1e-6).unwrap();
        assert_relative_eq!(r.singular_values[0], a * 5.0, max_relative = 1e-12);
        assert!(r.singular_values[1..].iter().all(|v| *v < 1e-12));
        assert_eq!(r.estimated_n, 1);
    }

    #[test]
    fn threshold_rule_uses_largest_index() {
        let r = report_from_values(2, vec![5.0, 0.1, 0.05], 0.01);
        assert_eq!(r.threshold, 0.03);
        assert_eq!(r.estimated_n, 3);
        let r = report_from_values(2, vec![0.02, 0.01, 0.0], 0.01);
        assert_eq!(r.estimated_n, 0);
    }

    #[test]
    fn sweep_skips_incompatible_s() {
        let m = meas(&[-0.9, 0.0, 0.9], &[1.0, 1.0, 1.0], 13);
        let (n_max, steps) = detect_count_sweep(&m, 1e-9).unwrap();
        assert_eq!(n_max, 3);
        assert_eq!(steps.len(), 6);
        assert!(matches!(steps[3], SweepStep::Skipped { s: 4 }));
        assert!(matches!(steps[4], SweepStep::Skipped { s: 5 }));
        assert!(steps[5].report().is_some());
    }

    #[test]
    fn zeta_values() {
        assert_eq!(zeta(2), 1.0);
        assert_eq!(zeta(3), 1.0);
        assert_relative_eq!(zeta(4), 2.0, epsilon = 1e-12);
        assert_relative_eq!(zeta(5), 4.0, epsilon = 1e-12);
        let b = zeta_separation(2, 3, 1e-4, 1.0, 1.0).unwrap();
        assert_relative_eq!(
            b,
            std::f64::consts::PI * 3.0 * (4.0 * 4.0 * 1e-4f64).sqrt(),
            max_relative = 1e-12
        );
        assert_eq!(zeta_separation(2, 2, 0.0, 1.0, 1.0).unwrap(), 0.0);
        assert!(zeta_separation(3, 2, 0.1, 1.0, 1.0).is_err());
    }
}
