//! `superres`: adversarial constructions, number detection, MUSIC, phase sweeps,
//! the l0 grid oracle and the closed-form resolution bounds from the command line.
//!
//! Exit codes: 0 success, 1 argument or precondition error, 2 verification failure,
//! 3 degenerate analysis (single-label sweep).

mod config;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use superres_core::constructions::{
    construct_clustered_adversarial, construct_number_adversarial, construct_support_adversarial,
};
use superres_core::experiments::{
    emit_diagram, fit_boundary_slope, l0_grid_oracle, run_phase_sweep, OutputPaths, RunManifest,
    SamplingRanges, Task,
};
use superres_core::music::{music_image, select_peaks, separation_bounds, MusicWindow, PeakSelectionParams};
use superres_core::number_detection::{detect_count_fixed_s, detect_count_sweep, DetectionReport, SweepStep};
use superres_core::{
    add_bounded_noise, fourier_forward, sup_norm_gap, DiscreteMeasure, Error, FourierMeasurement,
    MeasurementConfig,
};

use config::{
    BoundsArgs, ConstructArgs, DetectArgs, Kind, L0Args, MeasurementArgs, MusicArgs, Overlay, RunConfig,
    SweepArgs, TaskArg,
};

#[derive(Debug, Parser)]
#[command(name = "superres", version, about = "Resolution limits for positive point sources")]
struct Cli {
    /// Directory for JSON/CSV/SVG artifacts.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// JSON config; flags take precedence over its fields.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Re-verify construction gaps on a grid of this many frequencies.
    #[arg(long, global = true)]
    grid_density: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build an adversarial measure pair and verify its Fourier gap.
    Construct(ConstructArgs),
    /// Count sources by singular-value thresholding.
    Detect(DetectArgs),
    /// MUSIC imaging and peak selection.
    Music(MusicArgs),
    /// Monte-Carlo phase diagram with boundary fit.
    Sweep(SweepArgs),
    /// Exhaustive sparsest nonnegative fit on a small grid.
    L0(L0Args),
    /// Closed-form resolution limits.
    Bounds(BoundsArgs),
}

enum Failure {
    Args(String),
    Verification(String),
    Degenerate(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::DegenerateLabels => Failure::Degenerate(e.to_string()),
            e => Failure::Args(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

struct Globals {
    out: PathBuf,
    seed: u64,
    grid_density: Option<usize>,
}

fn need<T>(v: Option<T>, name: &str) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::Args(format!("missing --{name}")))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Outcome {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Args(e.to_string()))?;
    fs::write(path, text + "\n").map_err(|e| Failure::Args(format!("{}: {e}", path.display())))
}

fn pair_of(v: Option<Vec<f64>>, default: (f64, f64), name: &str) -> Result<(f64, f64), Failure> {
    match v.as_deref() {
        None => Ok(default),
        Some([lo, hi]) => Ok((*lo, *hi)),
        Some(_) => Err(Failure::Args(format!("--{name} takes exactly two values"))),
    }
}

fn load_measurement(args: MeasurementArgs, seed: u64) -> Result<(FourierMeasurement, Option<DiscreteMeasure>), Failure> {
    if let Some(path) = args.measurement {
        let text = fs::read_to_string(&path).map_err(|e| Failure::Args(format!("{}: {e}", path.display())))?;
        let meas: FourierMeasurement =
            serde_json::from_str(&text).map_err(|e| Failure::Args(format!("{}: {e}", path.display())))?;
        let meas = match args.sigma {
            Some(s) => meas.with_sigma(s),
            None => meas,
        };
        return Ok((meas, None));
    }
    let supports = need(args.supports, "supports (or --measurement)")?;
    let amplitudes = need(args.amplitudes, "amplitudes")?;
    let mu = DiscreteMeasure::new(supports, amplitudes)?;
    let sigma = args.sigma.unwrap_or(0.0);
    let omega = args.omega.unwrap_or(1.0);
    let config = match args.m_samples {
        Some(m) => MeasurementConfig::new(omega, m, sigma)?,
        None => MeasurementConfig::default_for(mu.len(), omega, sigma)?,
    };
    let meas = add_bounded_noise(&fourier_forward(&mu, &config), sigma, seed);
    Ok((meas, Some(mu)))
}

fn cmd_construct(args: ConstructArgs, g: &Globals) -> Outcome {
    let kind = need(args.kind, "kind")?;
    let n = need(args.n, "n")?;
    let sigma = need(args.sigma, "sigma")?;
    let omega = args.omega.unwrap_or(1.0);
    let m_min = args.m_min.unwrap_or(1.0);
    let mut pair = match kind {
        Kind::Number => construct_number_adversarial(n, omega, sigma, m_min)?,
        Kind::Support => construct_support_adversarial(n, omega, sigma, m_min)?,
        Kind::Clustered => construct_clustered_adversarial(n, need(args.s, "s")?, omega, sigma, m_min)?,
    };
    if let Some(density) = g.grid_density {
        pair.verified_gap = sup_norm_gap(&pair.mu_hat, &pair.mu, omega, density);
    }
    let name = match kind {
        Kind::Number => "number",
        Kind::Support => "support",
        Kind::Clustered => "clustered",
    };
    write_json(&g.out.join(format!("construct_{name}_n{n}.json")), &pair)?;
    let verdict = if pair.passes() { "PASS" } else { "FAIL" };
    println!("tau          {:.16e}", pair.tau);
    println!("verified_gap {:.16e}", pair.verified_gap);
    println!("sigma        {:.16e}", pair.sigma);
    println!("{verdict}: gap < sigma");
    if pair.passes() {
        Ok(())
    } else {
        Err(Failure::Verification(format!("gap {:.16e} >= sigma", pair.verified_gap)))
    }
}

fn print_report(r: &DetectionReport) {
    let svs: Vec<String> = r.singular_values.iter().map(|v| format!("{v:.16e}")).collect();
    println!("{:>3}  {:>3}  {:.16e}  {}", r.s, r.estimated_n, r.threshold, svs.join(" "));
}

#[derive(Serialize)]
struct DetectOutput {
    sigma: f64,
    estimated_n: usize,
    steps: Vec<SweepStep>,
}

fn cmd_detect(args: DetectArgs, g: &Globals) -> Outcome {
    let (meas, _) = load_measurement(args.input, g.seed)?;
    let sigma = meas.config.sigma;
    println!("{:>3}  {:>3}  {:<23}  singular values", "s", "n", "threshold");
    let (estimated_n, steps) = match args.s {
        Some(s) => {
            let r = detect_count_fixed_s(&meas, s, sigma)?;
            (r.estimated_n, vec![SweepStep::Evaluated(r)])
        }
        None => detect_count_sweep(&meas, sigma)?,
    };
    for step in &steps {
        match step {
            SweepStep::Evaluated(r) => print_report(r),
            SweepStep::Skipped { s } => println!("{s:>3}  skipped (incompatible grid)"),
        }
    }
    println!("estimated n = {estimated_n}");
    write_json(
        &g.out.join("detect.json"),
        &DetectOutput {
            sigma,
            estimated_n,
            steps,
        },
    )
}

#[derive(Serialize)]
struct MusicOutput {
    mode: &'static str,
    n: usize,
    window: MusicWindow,
    peaks: Vec<f64>,
    singular_values: Vec<f64>,
}

fn cmd_music(args: MusicArgs, g: &Globals) -> Outcome {
    let (meas, truth) = load_measurement(args.input, g.seed)?;
    let (mode, n) = match args.n {
        Some(n) => ("known", n),
        None => ("detected", detect_count_sweep(&meas, meas.config.sigma)?.0),
    };
    let window = match args.window.as_deref() {
        None => MusicWindow::default_for(n, meas.config.omega, truth.as_ref().and_then(DiscreteMeasure::d_min)),
        Some([start, end, step]) => MusicWindow::new(*start, *end, *step)?,
        Some(_) => return Err(Failure::Args("--window takes start,end,step".into())),
    };
    let image = music_image(&meas, n, &window)?;
    let peaks = select_peaks(&image, &PeakSelectionParams::default_for(&image));
    let csv = g.out.join("music_image.csv");
    fs::write(&csv, image.to_csv()).map_err(|e| Failure::Args(format!("{}: {e}", csv.display())))?;
    println!("n = {n} ({mode})");
    for p in &peaks {
        println!("peak {p:.16e}");
    }
    write_json(
        &g.out.join("music.json"),
        &MusicOutput {
            mode,
            n,
            window,
            peaks,
            singular_values: image.singular_values,
        },
    )
}

fn cmd_sweep(args: SweepArgs, g: &Globals) -> Outcome {
    let task = match need(args.task, "task")? {
        TaskArg::Number => Task::NumberDetection,
        TaskArg::Location => Task::LocationRecovery,
    };
    let n = need(args.n, "n")?;
    let trials = need(args.trials, "trials")?;
    let defaults = SamplingRanges::default();
    let ranges = SamplingRanges {
        log_snr: pair_of(args.log_snr, defaults.log_snr, "log-snr")?,
        log_srf: pair_of(args.log_srf, defaults.log_srf, "log-srf")?,
        omega: args.omega.unwrap_or(defaults.omega),
        m_samples: args.m_samples,
        ..defaults
    };
    let mut diagram = run_phase_sweep(task, n, trials, &ranges, g.seed)?;
    let stem = format!("sweep_{}_n{n}_seed{}", task.as_str(), g.seed);
    let outputs = OutputPaths::in_dir(&g.out, &stem);
    let fit = fit_boundary_slope(&mut diagram);
    emit_diagram(&diagram, &outputs)?;
    let successes = diagram.records.iter().filter(|r| r.success).count();
    let manifest = RunManifest {
        task,
        n,
        trials,
        seed: g.seed,
        ranges,
        m_samples: ranges.measurement_config(n, 0.0)?.m_samples,
        resampled: diagram.resampled,
        theory_slope: diagram.theory_slope,
        fitted_boundary_slope: diagram.fitted_boundary_slope,
        success_rate: successes as f64 / trials as f64,
        outputs,
    };
    write_json(&g.out.join(format!("{stem}_manifest.json")), &manifest)?;
    println!("trials {trials}, successes {successes}, resampled {}", diagram.resampled);
    let slope = fit?;
    println!("fitted slope {slope:.16e}, theory slope {}", diagram.theory_slope);
    Ok(())
}

fn cmd_l0(args: L0Args, g: &Globals) -> Outcome {
    let (meas, _) = load_measurement(args.input, g.seed)?;
    let grid = need(args.grid, "grid")?;
    let n_max = args.n_max.unwrap_or(2);
    let found = l0_grid_oracle(&meas, &grid, n_max)?;
    match &found {
        Some(m) => {
            println!("cardinality {}", m.len());
            for (y, a) in m.supports().iter().zip(m.amplitudes()) {
                println!("{y:.16e}  {a:.16e}");
            }
        }
        None => println!("no admissible measure with at most {n_max} sources"),
    }
    write_json(&g.out.join("l0.json"), &found)
}

fn cmd_bounds(args: BoundsArgs, g: &Globals) -> Outcome {
    let n = need(args.n, "n")?;
    let omega = args.omega.unwrap_or(1.0);
    let m_min = args.m_min.unwrap_or(1.0);
    let sigma = need(args.sigma, "sigma")?;
    let b = separation_bounds(n, omega, sigma, m_min)?;
    println!("number detection  lower {:.16e}  upper {:.16e}", b.num_lower, b.num_upper);
    println!("support recovery  lower {:.16e}  upper {:.16e}", b.supp_lower, b.supp_upper);
    write_json(&g.out.join("bounds.json"), &b)
}

fn run(cli: Cli) -> Outcome {
    let file = match &cli.config {
        Some(path) => RunConfig::load(path).map_err(Failure::Args)?,
        None => RunConfig::default(),
    };
    let g = Globals {
        out: cli.out.or(file.out).unwrap_or_else(|| PathBuf::from(".")),
        seed: cli.seed.or(file.seed).unwrap_or(0),
        grid_density: cli.grid_density.or(file.grid_density),
    };
    if g.grid_density.is_some_and(|d| d < 2) {
        return Err(Failure::Args("--grid-density must be at least 2".into()));
    }
    fs::create_dir_all(&g.out).map_err(|e| Failure::Args(format!("{}: {e}", g.out.display())))?;
    match cli.command {
        Command::Construct(a) => cmd_construct(a.overlay(file.construct), &g),
        Command::Detect(a) => cmd_detect(a.overlay(file.detect), &g),
        Command::Music(a) => cmd_music(a.overlay(file.music), &g),
        Command::Sweep(a) => cmd_sweep(a.overlay(file.sweep), &g),
        Command::L0(a) => cmd_l0(a.overlay(file.l0), &g),
        Command::Bounds(a) => cmd_bounds(a.overlay(file.bounds), &g),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Args(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Degenerate(msg)) => {
            eprintln!("degenerate analysis: {msg}");
            ExitCode::from(3)
        }
    }
}
