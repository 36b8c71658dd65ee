//! Worst-case measure pairs built from Vandermonde null spaces.
//!
//! Every construction follows the same recipe: lay out `m + 2` nodes, take the
//! one-dimensional null space of the moment matrix `(phi_m(t_1), ..., phi_m(t_{m+2}))`
//! in closed form through Lagrange basis ratios, and split the resulting signed
//! measure `gamma` by sign. Because the first `m + 1` moments of `gamma` vanish,
//! `F gamma(w)` starts at order `w^{m+1}` and stays below the noise level on `[-omega, omega]`.

use std::f64::consts::E;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measure::{sup_norm_gap, DiscreteMeasure, FourierTransform};

/// Dense-grid size used to verify constructed pairs.
pub const CONSTRUCTION_GRID_DENSITY: usize = 8192;

/// Largest point set accepted by the brute-force extremal-product oracle.
pub const MAX_EXTREMAL_POINTS: usize = 20;

/// A real measure with mixed-sign, nonzero amplitudes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignedDiscreteMeasure {
    supports: Vec<f64>,
    amplitudes: Vec<f64>,
}

impl SignedDiscreteMeasure {
    pub fn new(supports: Vec<f64>, amplitudes: Vec<f64>) -> Result<Self> {
        if supports.len() != amplitudes.len() || supports.is_empty() {
            return Err(Error::InvalidMeasure("supports and amplitudes must be non-empty and of equal length".into()));
        }
        if amplitudes.iter().any(|&a| a == 0.0 || !a.is_finite()) {
            return Err(Error::InvalidMeasure("signed amplitudes must be finite and nonzero".into()));
        }
        if supports.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidMeasure("supports must be strictly increasing".into()));
        }
        Ok(Self {
            supports,
            amplitudes,
        })
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

    /// Splits `gamma = positive - negative` into two positive measures.
    pub fn split(&self) -> Result<(DiscreteMeasure, DiscreteMeasure)> {
        let (mut ps, mut pa, mut ns, mut na) = (vec![], vec![], vec![], vec![]);
        for (&t, &a) in self.supports.iter().zip(&self.amplitudes) {
            if a > 0.0 {
                ps.push(t);
                pa.push(a);
            } else {
                ns.push(t);
                na.push(-a);
            }
        }
        Ok((DiscreteMeasure::new(ps, pa)?, DiscreteMeasure::new(ns, na)?))
    }

    /// `Q_p(gamma) = sum_j a_j t_j^p`.
    pub fn moment(&self, p: u32) -> f64 {
        self.supports
            .iter()
            .zip(&self.amplitudes)
            .map(|(t, a)| a * t.powi(p as i32))
            .sum()
    }

    /// `|Q_p| / (sum_j |a_j| * max_j |t_j|^p)`, the scale-free moment residual.
    pub fn relative_moment(&self, p: u32) -> f64 {
        let mass: f64 = self.amplitudes.iter().map(|a| a.abs()).sum();
        let reach = self.supports.iter().fold(0.0f64, |m, t| m.max(t.abs()));
        let scale = mass * reach.powi(p as i32);
        if scale == 0.0 {
            return self.moment(p).abs();
        }
        self.moment(p).abs() / scale
    }

    pub fn total_variation(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.abs()).sum()
    }
}

impl FourierTransform for SignedDiscreteMeasure {
    fn atoms(&self) -> Box<dyn Iterator<Item = (f64, f64)> + '_> {
        Box::new(self.supports.iter().copied().zip(self.amplitudes.iter().copied()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AdversarialKind {
    NumberDetection,
    SupportRecovery,
    ClusteredSupport,
}

/// Two positive measures whose Fourier transforms stay within `sigma` on `[-omega, omega]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdversarialPair {
    pub kind: AdversarialKind,
    pub mu: DiscreteMeasure,
    pub mu_hat: DiscreteMeasure,
    /// Signed difference `mu - mu_hat` on the full node set.
    pub gamma: SignedDiscreteMeasure,
    pub tau: f64,
    pub omega: f64,
    pub sigma: f64,
    pub m_min: f64,
    /// Dense-grid sup-norm of `F mu_hat - F mu`.
    pub verified_gap: f64,
    /// Moment orders `0..=moment_order` of `gamma` vanish.
    pub moment_order: usize,
}

impl AdversarialPair {
    /// The defining inequality `verified_gap < sigma`.
    pub fn passes(&self) -> bool {
        self.verified_gap < self.sigma
    }
}

/// Entry `j` is the Lagrange basis polynomial `P_j(t) = prod_{q != j} (t - t_q) / (t_j - t_q)`,
/// i.e. row `j` of `V^{-1} phi_{k-1}(t)` for the Vandermonde matrix `V` on `nodes`.
pub fn lagrange_inverse_row(nodes: &[f64], t: f64) -> Result<Vec<f64>> {
    check_distinct(nodes)?;
    Ok((0..nodes.len())
        .map(|j| {
            nodes
                .iter()
                .enumerate()
                .filter(|&(q, _)| q != j)
                .map(|(_, &tq)| (t - tq) / (nodes[j] - tq))
                .product()
        })
        .collect())
}

/// Nonzero vector spanning the null space of `(phi_m(t_1), ..., phi_m(t_{m+2}))`.
///
/// Anchored at `a_last = 1`; the other entries are
/// `a_j = -prod_{q != j, last} (t_last - t_q) / (t_j - t_q)`, accumulated as a
/// log-magnitude plus a sign so that clustered nodes do not under- or overflow.
pub fn vandermonde_null_vector(nodes: &[f64], moment_order: usize) -> Result<Vec<f64>> {
    if nodes.len() != moment_order + 2 {
        return Err(Error::InvalidArgs(format!(
            "{} nodes given, a one-dimensional null space needs moment_order + 2 = {}",
            nodes.len(),
            moment_order + 2
        )));
    }
    check_distinct(nodes)?;
    let last = nodes.len() - 1;
    let t_last = nodes[last];
    let mut out = Vec::with_capacity(nodes.len());
    for j in 0..last {
        let mut log_mag = 0.0;
        let mut negative = true; // leading minus sign
        for (q, &tq) in nodes[..last].iter().enumerate() {
            if q == j {
                continue;
            }
            let ratio = (t_last - tq) / (nodes[j] - tq);
            log_mag += ratio.abs().ln();
            if ratio < 0.0 {
                negative = !negative;
            }
        }
        let mag = log_mag.exp();
        out.push(if negative { -mag } else { mag });
    }
    out.push(1.0);
    Ok(out)
}

fn check_distinct(nodes: &[f64]) -> Result<()> {
    for (i, a) in nodes.iter().enumerate() {
        if !a.is_finite() {
            return Err(Error::InvalidArgs("nodes must be finite".into()));
        }
        if nodes[i + 1..].iter().any(|b| b == a) {
            return Err(Error::DuplicateNodes);
        }
    }
    Ok(())
}

fn check_common(n: usize, omega: f64, sigma: f64, m_min: f64) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidArgs(format!("n = {n} must be at least 2")));
    }
    if !(omega.is_finite() && omega > 0.0) {
        return Err(Error::InvalidArgs(format!("omega = {omega} must be positive")));
    }
    if !(m_min.is_finite() && m_min > 0.0 && sigma > 0.0 && sigma <= m_min) {
        return Err(Error::InvalidRatio { sigma, m_min });
    }
    Ok(())
}

/// Scales `a` so that `min_{j in anchor_set} |a_j| = m_min` (pinned exactly) and
/// `a[sign_index]` has the requested sign.
fn scale_null_vector(a: &mut [f64], anchor_set: &[usize], m_min: f64, sign_index: usize, positive: bool) {
    let (k, smallest) = anchor_set
        .iter()
        .map(|&j| (j, a[j].abs()))
        .min_by(|x, y| x.1.total_cmp(&y.1))
        .expect("anchor set is non-empty");
    let mut scale = m_min / smallest;
    if (a[sign_index] > 0.0) != positive {
        scale = -scale;
    }
    for v in a.iter_mut() {
        *v *= scale;
    }
    a[k] = a[k].signum() * m_min;
}

fn assemble_pair(
    kind: AdversarialKind,
    nodes: Vec<f64>,
    amplitudes: Vec<f64>,
    mu_indices: &[usize],
    tau: f64,
    omega: f64,
    sigma: f64,
    m_min: f64,
    moment_order: usize,
) -> Result<AdversarialPair> {
    let pick = |idx: &mut dyn Iterator<Item = usize>, negate: bool| {
        let (s, a): (Vec<f64>, Vec<f64>) = idx
            .map(|j| (nodes[j], if negate { -amplitudes[j] } else { amplitudes[j] }))
            .unzip();
        DiscreteMeasure::new(s, a)
    };
    let mu = pick(&mut mu_indices.iter().copied(), false)?;
    let mut rest = (0..nodes.len()).filter(|j| !mu_indices.contains(j));
    let mu_hat = pick(&mut rest, true)?;
    let gamma = SignedDiscreteMeasure::new(nodes, amplitudes)?;
    let verified_gap = sup_norm_gap(&mu_hat, &mu, omega, CONSTRUCTION_GRID_DENSITY);
    Ok(AdversarialPair {
        kind,
        mu,
        mu_hat,
        gamma,
        tau,
        omega,
        sigma,
        m_min,
        verified_gap,
        moment_order,
    })
}

/// `n` sources against `n - 1`: nodes `t_j = (j - n) tau`, `j = 1..2n-1`, with
/// `tau = e^{-1} / omega * (sigma / m_min)^{1 / (2n - 2)}`. `mu` takes the odd-indexed nodes.
pub fn construct_number_adversarial(
    n: usize,
    omega: f64,
    sigma: f64,
    m_min: f64,
) -> Result<AdversarialPair> {
    check_common(n, omega, sigma, m_min)?;
    let tau = (-1.0f64).exp() / omega * (sigma / m_min).powf(1.0 / (2 * n - 2) as f64);
    let nodes: Vec<f64> = (1..=2 * n - 1).map(|j| (j as f64 - n as f64) * tau).collect();
    let order = 2 * n - 3;
    let mut a = vandermonde_null_vector(&nodes, order)?;
    // 0-based even positions are the 1-based odd indices
    let odd: Vec<usize> = (0..nodes.len()).step_by(2).collect();
    let last = nodes.len() - 1;
    scale_null_vector(&mut a, &odd, m_min, last, true);
    assemble_pair(
        AdversarialKind::NumberDetection,
        nodes,
        a,
        &odd,
        tau,
        omega,
        sigma,
        m_min,
        order,
    )
}

/// Two interleaved `n`-source measures: nodes `t_j = (j - n - 1/2) tau`, `j = 1..2n`, with
/// `tau = e^{-1} / omega * (sigma / m_min)^{1 / (2n - 1)}`. `mu` takes the odd-indexed nodes.
pub fn construct_support_adversarial(
    n: usize,
    omega: f64,
    sigma: f64,
    m_min: f64,
) -> Result<AdversarialPair> {
    check_common(n, omega, sigma, m_min)?;
    let tau = (-1.0f64).exp() / omega * (sigma / m_min).powf(1.0 / (2 * n - 1) as f64);
    let nodes: Vec<f64> = (1..=2 * n)
        .map(|j| (j as f64 - n as f64 - 0.5) * tau)
        .collect();
    let order = 2 * n - 2;
    let mut a = vandermonde_null_vector(&nodes, order)?;
    let odd: Vec<usize> = (0..nodes.len()).step_by(2).collect();
    let last = nodes.len() - 1;
    scale_null_vector(&mut a, &odd, m_min, last, false);
    assemble_pair(
        AdversarialKind::SupportRecovery,
        nodes,
        a,
        &odd,
        tau,
        omega,
        sigma,
        m_min,
        order,
    )
}

/// Node positions of the clustered layout (1-based index `j` maps to entry `j - 1`):
/// even `j` sit on a grid of step `s tau`, odd `j` flank every other even node at `+-tau`.
pub fn clustered_nodes(n: usize, s: f64, tau: f64) -> Vec<f64> {
    let even = |j: usize| -(s * n as f64 - 2.0) / 2.0 * tau + (j as f64 - 2.0) * s / 2.0 * tau;
    (1..=2 * n)
        .map(|j| {
            if j % 2 == 0 {
                even(j)
            } else {
                let anchor = 4 * (j + 1).div_ceil(4) - 2;
                let sign = if ((j + 1) / 2) % 2 == 0 { 1.0 } else { -1.0 };
                even(anchor) + sign * tau
            }
        })
        .collect()
}

/// The four evenly spaced node classes of the clustered layout, as 0-based indices:
/// `C1 = {t_{4j-2}}`, `C2 = {t_{4j}}`, `C3 = {t_{4j-3}}`, `C4 = {t_{4j-1}}`.
pub fn clustered_node_classes(n: usize) -> [Vec<usize>; 4] {
    let class = |offset: usize, count: usize| -> Vec<usize> {
        (1..=count).map(|j| 4 * j - offset - 1).collect()
    };
    let up = n.div_ceil(2);
    let down = n / 2;
    [class(2, up), class(0, down), class(3, up), class(1, down)]
}

/// Sources spaced `s tau` apart against a measure of `n` sources hugging them at distance `tau`,
/// with `tau = 0.2 e^{-1} / (omega s^{(2n+1)/(2n-1)}) * (sigma / m_min)^{1/(2n-1)}`.
/// `mu` takes the even-indexed nodes.
pub fn construct_clustered_adversarial(
    n: usize,
    s: f64,
    omega: f64,
    sigma: f64,
    m_min: f64,
) -> Result<AdversarialPair> {
    check_common(n, omega, sigma, m_min)?;
    if sigma >= m_min {
        return Err(Error::InvalidRatio { sigma, m_min });
    }
    if !(s.is_finite() && s > 2.0) {
        return Err(Error::InvalidArgs(format!("s = {s} must exceed 2")));
    }
    let k = (2 * n - 1) as f64;
    let tau = 0.2 / E / (omega * s.powf((2 * n + 1) as f64 / k)) * (sigma / m_min).powf(1.0 / k);
    let nodes = clustered_nodes(n, s, tau);
    if nodes.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::DegenerateLayout(format!(
            "clustered nodes for n = {n}, s = {s} are not strictly increasing"
        )));
    }
    let order = 2 * n - 2;
    let mut a = vandermonde_null_vector(&nodes, order)?;
    let even: Vec<usize> = (1..nodes.len()).step_by(2).collect();
    let last = nodes.len() - 1;
    scale_null_vector(&mut a, &even, m_min, last, true);
    assemble_pair(
        AdversarialKind::ClusteredSupport,
        nodes,
        a,
        &even,
        tau,
        omega,
        sigma,
        m_min,
        order,
    )
}

/// Positive measure in `R^k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KdMeasure {
    pub dim: usize,
    pub supports: Vec<Vec<f64>>,
    pub amplitudes: Vec<f64>,
}

impl KdMeasure {
    pub fn transform_at(&self, omega: &[f64]) -> num_complex::Complex64 {
        self.supports
            .iter()
            .zip(&self.amplitudes)
            .map(|(y, &a)| {
                let phase: f64 = y.iter().zip(omega).map(|(u, v)| u * v).sum();
                num_complex::Complex64::from_polar(a, phase)
            })
            .sum()
    }

    /// Minimum pairwise Euclidean distance.
    pub fn d_min(&self) -> Option<f64> {
        let mut best: Option<f64> = None;
        for (i, p) in self.supports.iter().enumerate() {
            for q in &self.supports[i + 1..] {
                let d = p.iter().zip(q).map(|(u, v)| (u - v).powi(2)).sum::<f64>().sqrt();
                best = Some(best.map_or(d, |b: f64| b.min(d)));
            }
        }
        best
    }
}

/// Places every 1-D support on the first axis of `R^k`.
pub fn embed_1d_in_kd(pair: &AdversarialPair, k: usize) -> Result<(KdMeasure, KdMeasure)> {
    if k == 0 {
        return Err(Error::InvalidArgs("dimension k must be at least 1".into()));
    }
    let lift = |m: &DiscreteMeasure| KdMeasure {
        dim: k,
        supports: m
            .supports()
            .iter()
            .map(|&y| {
                let mut v = vec![0.0; k];
                v[0] = y;
                v
            })
            .collect(),
        amplitudes: m.amplitudes().to_vec(),
    };
    Ok((lift(&pair.mu), lift(&pair.mu_hat)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Extremum {
    MinOver,
    MaxOver,
}

/// Exhaustively evaluates `prod_{x != z} |x - z|` for every `z` in `points` and returns the
/// 0-based extremizer with its natural-log value. Ties (within `1e-12` in log domain) keep
/// the leftmost index.
pub fn extremal_product_bruteforce(points: &[f64], mode: Extremum) -> Result<(usize, f64)> {
    if points.len() < 2 || points.len() > MAX_EXTREMAL_POINTS {
        return Err(Error::InvalidArgs(format!(
            "need between 2 and {MAX_EXTREMAL_POINTS} points, got {}",
            points.len()
        )));
    }
    check_distinct(points)?;
    let logs: Vec<f64> = points
        .iter()
        .enumerate()
        .map(|(i, &z)| {
            points
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &x)| (x - z).abs().ln())
                .sum()
        })
        .collect();
    Ok(pick_extremum(&logs, mode))
}

/// Cross-set variant: extremizes `prod_{x in points} |z - x|` over `z in candidates`.
pub fn extremal_cross_product_bruteforce(
    candidates: &[f64],
    points: &[f64],
    mode: Extremum,
) -> Result<(usize, f64)> {
    if candidates.is_empty() || points.is_empty() {
        return Err(Error::InvalidArgs("point sets must be non-empty".into()));
    }
    let logs: Vec<f64> = candidates
        .iter()
        .map(|&z| points.iter().map(|&x| (x - z).abs().ln()).sum())
        .collect();
    Ok(pick_extremum(&logs, mode))
}

fn pick_extremum(logs: &[f64], mode: Extremum) -> (usize, f64) {
    let mut best = 0;
    for (i, &v) in logs.iter().enumerate().skip(1) {
        let tol = 1e-12 * v.abs().max(1.0);
        let better = match mode {
            Extremum::MinOver => v < logs[best] - tol,
            Extremum::MaxOver => v > logs[best] + tol,
        };
        if better {
            best = i;
        }
    }
    (best, logs[best])
}

/// `ln(k!)` by direct summation; exact enough for the `k <= 170` range used here.
pub fn ln_factorial(k: usize) -> f64 {
    (2..=k).map(|i| (i as f64).ln()).sum()
}

/// `(2n-1)! / ((n-1)!)^2 * m_min`, the total-variation bound for the number construction.
pub fn number_amplitude_bound(n: usize, m_min: f64) -> f64 {
    (ln_factorial(2 * n - 1) - 2.0 * ln_factorial(n - 1)).exp() * m_min
}

/// `(2n)! / (n! (n-1)!) * m_min`, the total-variation bound for the support construction.
pub fn support_amplitude_bound(n: usize, m_min: f64) -> f64 {
    (ln_factorial(2 * n) - ln_factorial(n) - ln_factorial(n - 1)).exp() * m_min
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn lagrange_row_examples() {
        assert_eq!(lagrange_inverse_row(&[0.0, 1.0], 2.0).unwrap(), vec![-1.0, 2.0]);
        assert_eq!(lagrange_inverse_row(&[0.0, 1.0], 0.0).unwrap(), vec![1.0, 0.0]);
        let row = lagrange_inverse_row(&[-1.0, 0.0, 1.0], 0.37).unwrap();
        assert_relative_eq!(row.iter().sum::<f64>(), 1.0, epsilon = 1e-15);
        assert!(matches!(
            lagrange_inverse_row(&[0.5, 0.5], 1.0),
            Err(Error::DuplicateNodes)
        ));
    }

    #[test]
    fn null_vector_small_cases() {
        let tau = 0.3;
        let a = vandermonde_null_vector(&[-tau, 0.0, tau], 1).unwrap();
        for (x, y) in a.iter().zip([1.0, -2.0, 1.0]) {
            assert_relative_eq!(*x, y, epsilon = 1e-14);
        }
        let b = vandermonde_null_vector(&[-1.5 * tau, -0.5 * tau, 0.5 * tau, 1.5 * tau], 2).unwrap();
        // anchored at the last entry = 1, so the ratio pattern (1,-3,3,-1) appears negated
        for (x, y) in b.iter().zip([-1.0, 3.0, -3.0, 1.0]) {
            assert_relative_eq!(*x, y, epsilon = 1e-13);
        }
        assert!(vandermonde_null_vector(&[0.0, 1.0, 2.0], 2).is_err());
        assert!(matches!(
            vandermonde_null_vector(&[0.0, 1.0, 1.0], 1),
            Err(Error::DuplicateNodes)
        ));
    }

    #[test]
    fn number_pair_n2() {
        let p = construct_number_adversarial(2, 1.0, 0.01, 1.0).unwrap();
        assert_relative_eq!(p.tau, 0.036788, max_relative = 1e-4);
        assert_eq!(p.mu.len(), 2);
        assert_eq!(p.mu_hat.len(), 1);
        assert_relative_eq!(p.mu.amplitudes()[0], 1.0, epsilon = 1e-14);
        assert_relative_eq!(p.mu.amplitudes()[1], 1.0, epsilon = 1e-14);
        assert_relative_eq!(p.mu_hat.amplitudes()[0], 2.0, epsilon = 1e-14);
        assert_eq!(p.mu_hat.supports(), &[0.0]);
        assert_relative_eq!(p.verified_gap, 4.0 * (p.tau / 2.0).sin().powi(2), max_relative = 1e-9);
        assert!(p.passes());
    }

    #[test]
    fn number_pair_at_unit_ratio() {
        let p = construct_number_adversarial(2, 1.0, 1.0, 1.0).unwrap();
        assert_relative_eq!(p.tau, (-1.0f64).exp(), epsilon = 1e-15);
        assert_relative_eq!(p.verified_gap, 4.0 * (p.tau / 2.0).sin().powi(2), max_relative = 1e-9);
        assert!(p.passes());
    }

    #[test]
    fn invalid_ratio_rejected() {
        assert!(matches!(
            construct_number_adversarial(2, 1.0, 2.0, 1.0),
            Err(Error::InvalidRatio { .. })
        ));
        assert!(matches!(
            construct_support_adversarial(3, 1.0, 0.0, 1.0),
            Err(Error::InvalidRatio { .. })
        ));
        assert!(matches!(
            construct_clustered_adversarial(2, 4.0, 1.0, 1.0, 1.0),
            Err(Error::InvalidRatio { .. })
        ));
        assert!(construct_clustered_adversarial(2, 1.5, 1.0, 1e-3, 1.0).is_err());
        assert!(construct_number_adversarial(1, 1.0, 0.1, 1.0).is_err());
    }

    #[test]
    fn support_pair_n2() {
        let p = construct_support_adversarial(2, 1.0, 1e-3, 1.0).unwrap();
        assert_relative_eq!(p.tau, (-1.0f64).exp() * 0.1, max_relative = 1e-12);
        for (x, y) in p.gamma.amplitudes().iter().zip([1.0, -3.0, 3.0, -1.0]) {
            assert_relative_eq!(*x, y, epsilon = 1e-12);
        }
        assert_relative_eq!(p.verified_gap, 4.98e-5, max_relative = 1e-2);
        assert!(p.passes());
    }

    #[test]
    fn clustered_layout_n2() {
        let p = construct_clustered_adversarial(2, 4.0, 1.0, 1e-4, 1.0).unwrap();
        let t = p.gamma.supports();
        assert_eq!(t.len(), 4);
        assert!(t.windows(2).all(|w| w[0] < w[1]));
        for k in 0..=2 {
            assert!(p.gamma.relative_moment(k) < 1e-10);
        }
        assert_relative_eq!(t[1] - t[0], p.tau, max_relative = 1e-12);
        assert_relative_eq!(t[3] - t[1], 4.0 * p.tau, max_relative = 1e-12);
        assert!(p.passes());
    }

    #[test]
    fn clustered_classes_partition_indices() {
        for n in 2..=9 {
            let mut all: Vec<usize> = clustered_node_classes(n).concat();
            all.sort_unstable();
            assert_eq!(all, (0..2 * n).collect::<Vec<_>>());
        }
    }

    #[test]
    fn embedding_preserves_distances() {
        let p = construct_number_adversarial(2, 1.0, 0.01, 1.0).unwrap();
        let (mu1, _) = embed_1d_in_kd(&p, 1).unwrap();
        assert_eq!(
            mu1.supports.iter().map(|v| v[0]).collect::<Vec<_>>(),
            p.mu.supports()
        );
        let (mu3, _) = embed_1d_in_kd(&p, 3).unwrap();
        assert_relative_eq!(mu3.d_min().unwrap(), 2.0 * p.tau, max_relative = 1e-12);
        assert!(embed_1d_in_kd(&p, 0).is_err());
    }

    #[test]
    fn extremal_products_small() {
        let (i, v) = extremal_product_bruteforce(&[0.3, 1.1], Extremum::MinOver).unwrap();
        assert_eq!(i, 0);
        assert_relative_eq!(v, 0.8f64.ln(), epsilon = 1e-15);
        let (_, w) = extremal_product_bruteforce(&[0.3, 1.1], Extremum::MaxOver).unwrap();
        assert_relative_eq!(w, v, epsilon = 1e-15);
        assert!(extremal_product_bruteforce(&[1.0, 1.0], Extremum::MinOver).is_err());
        let too_many: Vec<f64> = (0..21).map(|i| i as f64).collect();
        assert!(extremal_product_bruteforce(&too_many, Extremum::MinOver).is_err());
    }

    #[test]
    fn amplitude_bounds_n2() {
        assert_relative_eq!(number_amplitude_bound(2, 1.0), 6.0, max_relative = 1e-12);
        assert_relative_eq!(support_amplitude_bound(2, 1.0), 12.0, max_relative = 1e-12);
    }
}
