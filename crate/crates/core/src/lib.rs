//! Stability limits of one-dimensional super-resolution: adversarial measure pairs,
//! Hankel singular-value source counting, MUSIC location recovery and phase-transition
//! experiments.

pub mod constructions;
pub mod experiments;
pub mod error;
pub mod linalg;
pub mod measure;
pub mod music;
pub mod number_detection;

pub use error::{Error, Result};
pub use measure::{
    add_bounded_noise, fourier_forward, sup_norm_gap, DiscreteMeasure, FourierMeasurement,
    FourierTransform, MeasurementConfig,
};
