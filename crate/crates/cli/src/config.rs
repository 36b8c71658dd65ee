//! Flag and config-file records. Every subcommand field is optional on both sides so a
//! JSON config can fill whatever the command line leaves out; flags win.

use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde::Deserialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Number,
    Support,
    Clustered,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TaskArg {
    Number,
    Location,
}

#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ConstructArgs {
    #[arg(long, value_enum)]
    pub kind: Option<Kind>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub omega: Option<f64>,
    #[arg(long)]
    pub sigma: Option<f64>,
    #[arg(long)]
    pub m_min: Option<f64>,
    /// Cluster spacing factor for `--kind clustered`.
    #[arg(long)]
    pub s: Option<f64>,
}

/// Where samples come from: a measurement JSON file, or a measure sampled on the
/// standard grid with seeded bounded noise.
#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MeasurementArgs {
    #[arg(long)]
    pub measurement: Option<PathBuf>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub supports: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub amplitudes: Option<Vec<f64>>,
    #[arg(long)]
    pub omega: Option<f64>,
    #[arg(long)]
    pub m_samples: Option<usize>,
    #[arg(long)]
    pub sigma: Option<f64>,
}

#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DetectArgs {
    #[command(flatten)]
    pub input: MeasurementArgs,
    /// Run a single fixed `s` instead of the sweep.
    #[arg(long)]
    pub s: Option<usize>,
}

#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MusicArgs {
    #[command(flatten)]
    pub input: MeasurementArgs,
    /// Known source number; detected by the singular-value sweep when absent.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub window: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub task: Option<TaskArg>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub log_snr: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub log_srf: Option<Vec<f64>>,
    #[arg(long)]
    pub m_samples: Option<usize>,
    #[arg(long)]
    pub omega: Option<f64>,
}

#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct L0Args {
    #[command(flatten)]
    pub input: MeasurementArgs,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub grid: Option<Vec<f64>>,
    #[arg(long)]
    pub n_max: Option<usize>,
}

#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BoundsArgs {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub omega: Option<f64>,
    #[arg(long)]
    pub sigma: Option<f64>,
    #[arg(long)]
    pub m_min: Option<f64>,
}

/// JSON config file layout.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub grid_density: Option<usize>,
    pub construct: ConstructArgs,
    pub detect: DetectArgs,
    pub music: MusicArgs,
    pub sweep: SweepArgs,
    pub l0: L0Args,
    pub bounds: BoundsArgs,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
    }
}

/// Field-wise `flag.or(config)`.
pub trait Overlay {
    fn overlay(self, file: Self) -> Self;
}

macro_rules! overlay_fields {
    ($ty:ty { $($field:ident),* } $(, nested $inner:ident)?) => {
        impl Overlay for $ty {
            fn overlay(self, file: Self) -> Self {
                Self {
                    $($field: self.$field.or(file.$field),)*
                    $($inner: self.$inner.overlay(file.$inner),)?
                }
            }
        }
    };
}

overlay_fields!(ConstructArgs { kind, n, omega, sigma, m_min, s });
overlay_fields!(MeasurementArgs { measurement, supports, amplitudes, omega, m_samples, sigma });
overlay_fields!(DetectArgs { s }, nested input);
overlay_fields!(MusicArgs { n, window }, nested input);
overlay_fields!(SweepArgs { task, n, trials, log_snr, log_srf, m_samples, omega });
overlay_fields!(L0Args { grid, n_max }, nested input);
overlay_fields!(BoundsArgs { n, omega, sigma, m_min });

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_win_over_file() {
        let flags = ConstructArgs {
            n: Some(3),
            ..Default::default()
        };
        let file = ConstructArgs {
            n: Some(5),
            sigma: Some(0.1),
            ..Default::default()
        };
        let merged = flags.overlay(file);
        assert_eq!(merged.n, Some(3));
        assert_eq!(merged.sigma, Some(0.1));
    }

    #[test]
    fn config_rejects_unknown_fields() {
        assert!(serde_json::from_str::<RunConfig>(r#"{"seed": 1, "colour": 2}"#).is_err());
        assert!(serde_json::from_str::<RunConfig>(r#"{"construct": {"nn": 2}}"#).is_err());
        assert!(serde_json::from_str::<RunConfig>(r#"{"music": {"input": {"sigmaa": 1}}}"#).is_err());
        let c: RunConfig =
            serde_json::from_str(r#"{"seed": 4, "music": {"n": 2, "input": {"supports": [-0.5, 0.5]}}}"#).unwrap();
        assert_eq!(c.seed, Some(4));
        assert_eq!(c.music.input.supports, Some(vec![-0.5, 0.5]));
    }
}
