use thiserror::Error;

/// Errors raised by the library. Each variant names the precondition that failed.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("invalid measurement configuration: {0}")]
    InvalidConfig(String),

    #[error("nodes must be pairwise distinct")]
    DuplicateNodes,

    #[error("noise ratio must satisfy 0 < sigma <= m_min (sigma = {sigma}, m_min = {m_min})")]
    InvalidRatio { sigma: f64, m_min: f64 },

    #[error("degenerate node layout: {0}")]
    DegenerateLayout(String),

    #[error("delta = {delta} exceeds half the minimum separation {half_dmin}; intervals overlap")]
    OverlappingIntervals { delta: f64, half_dmin: f64 },

    #[error("(M - 1) = {m_minus_one} is not divisible by 2s = {two_s}")]
    IncompatibleGrid { m_minus_one: usize, two_s: usize },

    #[error("insufficient samples: {0}")]
    InsufficientSamples(String),

    #[error("noise space is empty: n = {n} but the Hankel matrix has only {dim} columns")]
    DegenerateNoiseSpace { n: usize, dim: usize },

    #[error("singular value decomposition did not converge")]
    SvdFailed,

    #[error("invalid arguments: {0}")]
    InvalidArgs(String),

    #[error("cannot pack {n} sources at separation {d_min} into an interval of length {length}")]
    InfeasiblePacking { n: usize, d_min: f64, length: f64 },

    #[error("all records share the same label; no boundary to fit")]
    DegenerateLabels,

    #[error("grid of {len} points with n_max = {n_max} exceeds the exhaustive-search limits (24, 4)")]
    GridTooLarge { len: usize, n_max: usize },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
