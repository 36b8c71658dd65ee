//! Monte-Carlo phase-transition sweeps, boundary-slope fitting, and an exhaustive
//! sparsest-admissible-measure oracle on a grid.

use std::f64::consts::{E, PI};
use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use faer::linalg::solvers::{Solve, SolveLstsq};
use faer::Mat;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measure::{
    add_bounded_noise_with, fourier_forward, sample_residual, ClusterInterval, DiscreteMeasure,
    FourierMeasurement, MeasurementConfig,
};
use crate::music::{run_single_experiment, Recovery};
use crate::number_detection::detect_count_sweep;

pub const MIN_FIT_RECORDS: usize = 200;
pub const MAX_ORACLE_GRID: usize = 24;
pub const MAX_ORACLE_SPARSITY: usize = 4;
const MAX_RESAMPLES: usize = 64;

/// Distributions the random trials are drawn from. Logs are base 10.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SamplingRanges {
    /// `log10(m_min / sigma)` range.
    pub log_snr: (f64, f64),
    /// `log10(pi / (omega d_min))` range.
    pub log_srf: (f64, f64),
    /// Amplitudes other than the minimal one are `m_min * U[lo, hi]`.
    pub amplitude_factor: (f64, f64),
    pub m_min: f64,
    pub omega: f64,
    /// Sample count; `4n + 1` when absent.
    pub m_samples: Option<usize>,
}

impl Default for SamplingRanges {
    fn default() -> Self {
        Self {
            log_snr: (0.5, 6.0),
            log_srf: (0.1, 1.1),
            amplitude_factor: (1.0, 3.0),
            m_min: 1.0,
            omega: 1.0,
            m_samples: None,
        }
    }
}

impl SamplingRanges {
    pub fn validate(&self) -> Result<()> {
        let ordered = |(lo, hi): (f64, f64)| lo.is_finite() && hi.is_finite() && lo <= hi;
        if !ordered(self.log_snr) || !ordered(self.log_srf) || !ordered(self.amplitude_factor) {
            return Err(Error::InvalidArgs("sampling ranges need finite lo <= hi".into()));
        }
        if self.amplitude_factor.0 < 1.0 {
            return Err(Error::InvalidArgs(
                "amplitude factors must be >= 1 so that m_min is the minimum".into(),
            ));
        }
        if !(self.m_min > 0.0 && self.m_min.is_finite()) {
            return Err(Error::InvalidArgs(format!("m_min = {} must be positive", self.m_min)));
        }
        if !(self.omega > 0.0 && self.omega.is_finite()) {
            return Err(Error::InvalidArgs(format!("omega = {} must be positive", self.omega)));
        }
        Ok(())
    }

    pub fn measurement_config(&self, n: usize, sigma: f64) -> Result<MeasurementConfig> {
        match self.m_samples {
            Some(m) => MeasurementConfig::new(self.omega, m, sigma),
            None => MeasurementConfig::default_for(n, self.omega, sigma),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Task {
    NumberDetection,
    LocationRecovery,
}

impl Task {
    pub fn as_str(self) -> &'static str {
        match self {
            Task::NumberDetection => "number_detection",
            Task::LocationRecovery => "location_recovery",
        }
    }

    /// `2n - 2` for number detection, `2n - 1` for location recovery.
    pub fn theory_slope(self, n: usize) -> usize {
        match self {
            Task::NumberDetection => 2 * n - 2,
            Task::LocationRecovery => 2 * n - 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseRecord {
    pub log_srf: f64,
    pub log_snr: f64,
    pub n: usize,
    pub task: Task,
    pub success: bool,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseDiagram {
    pub records: Vec<PhaseRecord>,
    pub n: usize,
    pub task: Task,
    pub fitted_boundary_slope: Option<f64>,
    pub theory_slope: usize,
    /// Trials whose first draw could not be packed and were redrawn.
    pub resampled: usize,
}

/// One random trial configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialConfig {
    pub mu: DiscreteMeasure,
    pub sigma: f64,
    pub log_srf: f64,
    pub log_snr: f64,
}

pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of trial `index` under master seed `master`.
pub fn trial_seed(master: u64, index: u64) -> u64 {
    splitmix64(master ^ splitmix64(index))
}

fn uniform<R: Rng>(rng: &mut R, (lo, hi): (f64, f64)) -> f64 {
    if lo == hi {
        lo
    } else {
        rng.gen_range(lo..hi)
    }
}

/// `n` sources in `[-L/2, L/2]` with every gap at least `d_min` and one randomly chosen
/// gap exactly `d_min`. The slack is split over the margins and the free gaps by
/// exponential weights.
fn pack_supports<R: Rng>(rng: &mut R, n: usize, d_min: f64, length: f64) -> Result<Vec<f64>> {
    let slack = length - (n - 1) as f64 * d_min;
    if !(slack >= 0.0) {
        return Err(Error::InfeasiblePacking { n, d_min, length });
    }
    let anchored = rng.gen_range(0..n - 1);
    // slots: left margin, the n-2 free gaps, right margin
    let weights: Vec<f64> = (0..n).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
    let total: f64 = weights.iter().sum();
    let share = |k: usize| slack * weights[k] / total;
    let mut supports = Vec::with_capacity(n);
    let mut y = -length / 2.0 + share(0);
    supports.push(y);
    let mut slot = 1;
    for gap in 0..n - 1 {
        y += d_min;
        if gap != anchored {
            y += share(slot);
            slot += 1;
        }
        supports.push(y.min(length / 2.0));
    }
    Ok(supports)
}

/// Draws a configuration whose realized minimum separation equals the sampled `d_min`,
/// with amplitudes whose minimum equals `m_min`.
pub fn sample_random_config(
    n: usize,
    omega: f64,
    ranges: &SamplingRanges,
    seed: u64,
) -> Result<TrialConfig> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_with(&mut rng, n, omega, ranges)
}

fn sample_with<R: Rng>(rng: &mut R, n: usize, omega: f64, ranges: &SamplingRanges) -> Result<TrialConfig> {
    ranges.validate()?;
    if n < 2 {
        return Err(Error::InvalidArgs(format!("need at least two sources, got n = {n}")));
    }
    let log_snr = uniform(rng, ranges.log_snr);
    let log_srf = uniform(rng, ranges.log_srf);
    let d_min = PI / (omega * 10f64.powf(log_srf));
    let interval = ClusterInterval::new(n, omega);
    let supports = pack_supports(rng, n, d_min, interval.length())?;
    let smallest = rng.gen_range(0..n);
    let amplitudes = (0..n)
        .map(|j| {
            if j == smallest {
                ranges.m_min
            } else {
                ranges.m_min * uniform(rng, ranges.amplitude_factor)
            }
        })
        .collect();
    Ok(TrialConfig {
        mu: DiscreteMeasure::new(supports, amplitudes)?,
        sigma: ranges.m_min / 10f64.powf(log_snr),
        log_srf,
        log_snr,
    })
}

/// Rebuilds trial `seed`: its configuration, its noisy measurement and the number of
/// redraws needed to pack the sources.
pub fn synthesize_trial(
    n: usize,
    ranges: &SamplingRanges,
    seed: u64,
) -> Result<(TrialConfig, FourierMeasurement, usize)> {
    let mut resampled = 0;
    let mut draw_seed = seed;
    let (cfg, mut rng) = loop {
        let mut rng = ChaCha8Rng::seed_from_u64(draw_seed);
        match sample_with(&mut rng, n, ranges.omega, ranges) {
            Ok(cfg) => break (cfg, rng),
            Err(Error::InfeasiblePacking { .. }) if resampled < MAX_RESAMPLES => {
                resampled += 1;
                draw_seed = splitmix64(draw_seed);
            }
            Err(e) => return Err(e),
        }
    };
    let config = ranges.measurement_config(n, cfg.sigma)?;
    let meas = add_bounded_noise_with(&fourier_forward(&cfg.mu, &config), cfg.sigma, &mut rng);
    Ok((cfg, meas, resampled))
}

fn run_trial(task: Task, n: usize, ranges: &SamplingRanges, seed: u64) -> Result<(PhaseRecord, usize)> {
    let (cfg, meas, resampled) = synthesize_trial(n, ranges, seed)?;
    let success = match task {
        Task::NumberDetection => detect_count_sweep(&meas, cfg.sigma)?.0 == n,
        Task::LocationRecovery => run_single_experiment(&cfg.mu, &meas, n)? == Recovery::Stable,
    };
    let record = PhaseRecord {
        log_srf: cfg.log_srf,
        log_snr: cfg.log_snr,
        n,
        task,
        success,
        seed,
    };
    Ok((record, resampled))
}

/// Runs `trials` independent trials in parallel. Records are sorted by seed.
pub fn run_phase_sweep(
    task: Task,
    n: usize,
    trials: usize,
    ranges: &SamplingRanges,
    seed: u64,
) -> Result<PhaseDiagram> {
    if trials == 0 {
        return Err(Error::InvalidArgs("trials must be at least 1".into()));
    }
    ranges.validate()?;
    ranges.measurement_config(n, 0.0)?;
    let results: Vec<(PhaseRecord, usize)> = (0..trials as u64)
        .into_par_iter()
        .map(|i| run_trial(task, n, ranges, trial_seed(seed, i)))
        .collect::<Result<_>>()?;
    let resampled = results.iter().map(|r| r.1).sum();
    let mut records: Vec<PhaseRecord> = results.into_iter().map(|r| r.0).collect();
    records.sort_by_key(|r| r.seed);
    Ok(PhaseDiagram {
        records,
        n,
        task,
        fitted_boundary_slope: None,
        theory_slope: task.theory_slope(n),
        resampled,
    })
}

const LOGISTIC_RIDGE: f64 = 1e-6;
const LOGISTIC_MAX_ITER: usize = 500;

/// Ridge-regularized logistic regression of `success` on standardized
/// `(log_srf, log_snr)` by Newton iterations. Returns `[w0, w_srf, w_snr]` in
/// standardized units together with the feature means and scales.
fn logistic_fit(records: &[PhaseRecord]) -> ([f64; 3], [f64; 2], [f64; 2]) {
    let n = records.len() as f64;
    let mean = |f: fn(&PhaseRecord) -> f64| records.iter().map(f).sum::<f64>() / n;
    let m = [mean(|r| r.log_srf), mean(|r| r.log_snr)];
    let sd = |f: fn(&PhaseRecord) -> f64, mu: f64| {
        let v = records.iter().map(|r| (f(r) - mu).powi(2)).sum::<f64>() / n;
        if v > 0.0 { v.sqrt() } else { 1.0 }
    };
    let s = [sd(|r| r.log_srf, m[0]), sd(|r| r.log_snr, m[1])];
    let x: Vec<[f64; 3]> = records
        .iter()
        .map(|r| [1.0, (r.log_srf - m[0]) / s[0], (r.log_snr - m[1]) / s[1]])
        .collect();
    let y: Vec<f64> = records.iter().map(|r| if r.success { 1.0 } else { 0.0 }).collect();
    let mut w = [0.0f64; 3];
    for _ in 0..LOGISTIC_MAX_ITER {
        let mut grad = Mat::<f64>::zeros(3, 1);
        let mut hess = Mat::<f64>::zeros(3, 3);
        for (xi, &yi) in x.iter().zip(&y) {
            let z = xi[0] * w[0] + xi[1] * w[1] + xi[2] * w[2];
            let p = 1.0 / (1.0 + (-z).exp());
            let q = (p * (1.0 - p)).max(1e-300);
            for a in 0..3 {
                grad[(a, 0)] += (p - yi) * xi[a];
                for b in 0..3 {
                    hess[(a, b)] += q * xi[a] * xi[b];
                }
            }
        }
        for a in 1..3 {
            grad[(a, 0)] += LOGISTIC_RIDGE * n * w[a];
            hess[(a, a)] += LOGISTIC_RIDGE * n;
        }
        let step = hess.partial_piv_lu().solve(&grad);
        let mut step_norm = 0.0;
        for a in 0..3 {
            w[a] -= step[(a, 0)];
            step_norm += step[(a, 0)] * step[(a, 0)];
        }
        let w_norm = w.iter().map(|v| v * v).sum::<f64>().sqrt();
        if !step_norm.is_finite() || step_norm.sqrt() <= 1e-10 * (1.0 + w_norm) {
            break;
        }
    }
    (w, m, s)
}

/// Slope `alpha` of the fitted boundary `log_snr = alpha log_srf + beta`; stored in the diagram.
pub fn fit_boundary_slope(diagram: &mut PhaseDiagram) -> Result<f64> {
    let records = &diagram.records;
    if records.len() < MIN_FIT_RECORDS {
        return Err(Error::InvalidArgs(format!(
            "slope fitting needs at least {MIN_FIT_RECORDS} records, got {}",
            records.len()
        )));
    }
    let successes = records.iter().filter(|r| r.success).count();
    if successes == 0 || successes == records.len() {
        return Err(Error::DegenerateLabels);
    }
    let (w, _, s) = logistic_fit(records);
    let alpha = -(w[1] / s[0]) / (w[2] / s[1]);
    diagram.fitted_boundary_slope = Some(alpha);
    Ok(alpha)
}

/// Least-squares amplitudes of `columns` against `target`, constrained to be
/// nonnegative. Exact for the small column counts used here: the optimum is the
/// unconstrained solution on some passive subset, so every subset is tried.
fn nnls_small(columns: &[Vec<f64>], target: &[f64]) -> (Vec<f64>, f64) {
    let k = columns.len();
    let rows = target.len();
    let b = Mat::from_fn(rows, 1, |i, _| target[i]);
    let mut best = (vec![0.0; k], target.iter().map(|v| v * v).sum::<f64>());
    for mask in 1u32..(1 << k) {
        let idx: Vec<usize> = (0..k).filter(|&j| mask & (1 << j) != 0).collect();
        let a = Mat::from_fn(rows, idx.len(), |i, j| columns[idx[j]][i]);
        let sol = a.col_piv_qr().solve_lstsq(&b);
        let x: Vec<f64> = (0..idx.len()).map(|j| sol[(j, 0)]).collect();
        if x.iter().any(|&v| !(v >= 0.0)) {
            continue;
        }
        let res: f64 = (0..rows)
            .map(|i| {
                let fit: f64 = idx.iter().zip(&x).map(|(&j, v)| columns[j][i] * v).sum();
                (fit - target[i]).powi(2)
            })
            .sum();
        if res < best.1 {
            let mut full = vec![0.0; k];
            for (&j, &v) in idx.iter().zip(&x) {
                full[j] = v;
            }
            best = (full, res);
        }
    }
    best
}

fn subsets(len: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, len: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..len {
            cur.push(i);
            rec(i + 1, len, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, len, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Real form `[Re; Im]` of the sampled Fourier matrix on `grid` and of the data.
fn stacked_system(meas: &FourierMeasurement, grid: &[f64]) -> (Vec<Vec<f64>>, Vec<f64>) {
    let columns = grid
        .iter()
        .map(|&t| {
            let f = &meas.frequencies;
            f.iter().map(|w| (t * w).cos()).chain(f.iter().map(|w| (t * w).sin())).collect()
        })
        .collect();
    let v = &meas.values;
    let target = v.iter().map(|z| z.re).chain(v.iter().map(|z| z.im)).collect();
    (columns, target)
}

/// Sparsest nonnegative measure on `grid` whose samples stay within `sigma` of the data.
///
/// Cardinalities `0..=n_max` are tried in order; each support subset gets nonnegative
/// least-squares amplitudes, and it is accepted when the maximum sample residual is below
/// `meas.config.sigma`. Among feasible subsets of the smallest cardinality the one with the
/// smallest residual is returned.
pub fn l0_grid_oracle(
    meas: &FourierMeasurement,
    grid: &[f64],
    n_max: usize,
) -> Result<Option<DiscreteMeasure>> {
    if grid.len() > MAX_ORACLE_GRID || n_max > MAX_ORACLE_SPARSITY {
        return Err(Error::GridTooLarge {
            len: grid.len(),
            n_max,
        });
    }
    if grid.iter().any(|g| !g.is_finite()) {
        return Err(Error::InvalidArgs("grid points must be finite".into()));
    }
    let mut sorted = grid.to_vec();
    sorted.sort_by(f64::total_cmp);
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::DuplicateNodes);
    }
    let sigma = meas.config.sigma;
    let (columns, target) = stacked_system(meas, grid);
    for k in 0..=n_max.min(grid.len()) {
        let mut best: Option<(f64, DiscreteMeasure)> = None;
        for subset in subsets(grid.len(), k) {
            let cols: Vec<Vec<f64>> = subset.iter().map(|&j| columns[j].clone()).collect();
            let (amps, _) = nnls_small(&cols, &target);
            let (supports, amplitudes): (Vec<f64>, Vec<f64>) = subset
                .iter()
                .zip(&amps)
                .filter(|(_, &a)| a > 0.0)
                .map(|(&j, &a)| (grid[j], a))
                .unzip();
            let candidate = if supports.is_empty() {
                DiscreteMeasure::zero()
            } else {
                DiscreteMeasure::new(supports, amplitudes)?
            };
            let residual = sample_residual(&candidate, meas);
            if residual < sigma && best.as_ref().is_none_or(|(r, _)| residual < *r) {
                best = Some((residual, candidate));
            }
        }
        if let Some((_, mu)) = best {
            return Ok(Some(mu));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputPaths {
    pub csv: PathBuf,
    pub svg: PathBuf,
}

impl OutputPaths {
    /// `<dir>/<stem>.csv` and `<dir>/<stem>.svg`.
    pub fn in_dir(dir: impl Into<PathBuf>, stem: &str) -> Self {
        let dir = dir.into();
        Self {
            csv: dir.join(format!("{stem}.csv")),
            svg: dir.join(format!("{stem}.svg")),
        }
    }
}

pub fn diagram_csv(diagram: &PhaseDiagram) -> String {
    let mut out = String::from("log_srf,log_snr,n,task,success,seed\n");
    for r in &diagram.records {
        let _ = writeln!(
            out,
            "{:.16e},{:.16e},{},{},{},{}",
            r.log_srf,
            r.log_snr,
            r.n,
            r.task.as_str(),
            r.success,
            r.seed
        );
    }
    out
}

/// Intercepts `c` of the guide lines `log_snr = slope (log_srf + c)` derived from the
/// lower and upper separation bounds.
fn guide_offsets(task: Task) -> [f64; 2] {
    let upper = match task {
        Task::NumberDetection => 4.4 * E,
        Task::LocationRecovery => 5.88 * E,
    };
    [-(PI * E / 2.0).log10(), upper.log10()]
}

pub fn diagram_svg(diagram: &PhaseDiagram) -> String {
    const W: f64 = 800.0;
    const H: f64 = 600.0;
    const L: f64 = 70.0;
    const R: f64 = 770.0;
    const T: f64 = 30.0;
    const B: f64 = 540.0;
    let span = |f: fn(&PhaseRecord) -> f64| {
        let (lo, hi) = diagram
            .records
            .iter()
            .map(f)
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
        if hi > lo { (lo, hi) } else { (lo - 0.5, lo + 0.5) }
    };
    let (x0, x1) = span(|r| r.log_srf);
    let (y0, y1) = span(|r| r.log_snr);
    let px = |x: f64| L + (x - x0) / (x1 - x0) * (R - L);
    let py = |y: f64| B - (y - y0) / (y1 - y0) * (B - T);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {W} {H}" width="{W}" height="{H}">"#
    );
    let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<defs><clipPath id="plot"><rect x="{L}" y="{T}" width="{}" height="{}"/></clipPath></defs>"#,
        R - L,
        B - T
    );
    for r in &diagram.records {
        let color = if r.success { "#1f4fd1" } else { "#d12a1f" };
        let _ = writeln!(
            s,
            r#"<circle cx="{:.3}" cy="{:.3}" r="2" fill="{color}" fill-opacity="0.6"/>"#,
            px(r.log_srf),
            py(r.log_snr)
        );
    }
    let slope = diagram.theory_slope as f64;
    for c in guide_offsets(diagram.task) {
        let _ = writeln!(
            s,
            r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="black" stroke-width="1.5" stroke-dasharray="6 4" clip-path="url(#plot)"/>"#,
            px(x0),
            py(slope * (x0 + c)),
            px(x1),
            py(slope * (x1 + c))
        );
    }
    let _ = writeln!(
        s,
        r#"<rect x="{L}" y="{T}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        R - L,
        B - T
    );
    for (x, label) in [(x0, x0), (x1, x1)] {
        let _ = writeln!(
            s,
            r#"<text x="{:.3}" y="{}" font-size="12" text-anchor="middle">{label:.2}</text>"#,
            px(x),
            B + 18.0
        );
    }
    for (y, label) in [(y0, y0), (y1, y1)] {
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{:.3}" font-size="12" text-anchor="end">{label:.2}</text>"#,
            L - 6.0,
            py(y) + 4.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" font-size="14" text-anchor="middle">log10 SRF</text>"#,
        (L + R) / 2.0,
        H - 20.0
    );
    let _ = writeln!(
        s,
        r#"<text x="20" y="{}" font-size="14" text-anchor="middle" transform="rotate(-90 20 {})">log10 SNR</text>"#,
        (T + B) / 2.0,
        (T + B) / 2.0
    );
    let title = match diagram.fitted_boundary_slope {
        Some(a) => format!("{} n={} (guide slope {}, fitted {a:.3})", diagram.task.as_str(), diagram.n, diagram.theory_slope),
        None => format!("{} n={} (guide slope {})", diagram.task.as_str(), diagram.n, diagram.theory_slope),
    };
    let _ = writeln!(s, r#"<text x="{}" y="20" font-size="14" text-anchor="middle">{title}</text>"#, W / 2.0);
    s.push_str("</svg>\n");
    s
}

/// Writes the CSV table and the SVG scatter.
pub fn emit_diagram(diagram: &PhaseDiagram, paths: &OutputPaths) -> Result<()> {
    if diagram.records.is_empty() {
        return Err(Error::InvalidArgs("cannot emit an empty phase diagram".into()));
    }
    fs::write(&paths.csv, diagram_csv(diagram))?;
    fs::write(&paths.svg, diagram_svg(diagram))?;
    Ok(())
}

/// Everything needed to replay a sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub task: Task,
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub ranges: SamplingRanges,
    pub m_samples: usize,
    pub resampled: usize,
    pub theory_slope: usize,
    pub fitted_boundary_slope: Option<f64>,
    pub success_rate: f64,
    pub outputs: OutputPaths,
}
