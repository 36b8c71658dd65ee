//! Python bindings. Measures, measurements and adversarial pairs are classes; the
//! algorithms are module-level functions. Library errors surface as `ValueError`.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;
use superres_core::constructions::{self as cons, Extremum};
use superres_core::experiments::{self as exp, SamplingRanges, Task};
use superres_core::music::{self, MusicWindow, PeakSelectionParams, Recovery};
use superres_core::number_detection as nd;
use superres_core::{measure, FourierTransform, MeasurementConfig};

fn py_err(e: superres_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "DiscreteMeasure", frozen)]
struct PyMeasure(measure::DiscreteMeasure);

#[pymethods]
impl PyMeasure {
    #[new]
    fn new(supports: Vec<f64>, amplitudes: Vec<f64>) -> PyResult<Self> {
        measure::DiscreteMeasure::new(supports, amplitudes).map(Self).map_err(py_err)
    }

    #[getter]
    fn supports(&self) -> Vec<f64> {
        self.0.supports().to_vec()
    }

    #[getter]
    fn amplitudes(&self) -> Vec<f64> {
        self.0.amplitudes().to_vec()
    }

    #[getter]
    fn d_min(&self) -> Option<f64> {
        self.0.d_min()
    }

    #[getter]
    fn m_min(&self) -> Option<f64> {
        self.0.m_min()
    }

    /// `F mu` at each frequency.
    fn transform(&self, frequencies: Vec<f64>) -> Vec<Complex64> {
        frequencies.iter().map(|&w| self.0.transform_at(w)).collect()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __repr__(&self) -> String {
        format!("DiscreteMeasure(supports={:?}, amplitudes={:?})", self.0.supports(), self.0.amplitudes())
    }
}

#[pyclass(name = "Measurement", frozen)]
struct PyMeasurement(measure::FourierMeasurement);

#[pymethods]
impl PyMeasurement {
    /// Samples `mu` at `m_samples` evenly spaced frequencies in `[-omega, omega]` and adds
    /// bounded noise of radius `sigma` drawn from `seed`.
    #[new]
    #[pyo3(signature = (mu, omega, sigma = 0.0, m_samples = None, seed = 0))]
    fn new(mu: &PyMeasure, omega: f64, sigma: f64, m_samples: Option<usize>, seed: u64) -> PyResult<Self> {
        let config = match m_samples {
            Some(m) => MeasurementConfig::new(omega, m, sigma),
            None => MeasurementConfig::default_for(mu.0.len(), omega, sigma),
        }
        .map_err(py_err)?;
        let clean = measure::fourier_forward(&mu.0, &config);
        Ok(Self(measure::add_bounded_noise(&clean, sigma, seed)))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        serde_json::from_str(text)
            .map(Self)
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.0).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    #[getter]
    fn frequencies(&self) -> Vec<f64> {
        self.0.frequencies.clone()
    }

    #[getter]
    fn values(&self) -> Vec<Complex64> {
        self.0.values.clone()
    }

    #[getter]
    fn omega(&self) -> f64 {
        self.0.config.omega
    }

    #[getter]
    fn sigma(&self) -> f64 {
        self.0.config.sigma
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }
}

#[pyclass(name = "AdversarialPair", frozen)]
struct PyPair(cons::AdversarialPair);

#[pymethods]
impl PyPair {
    #[getter]
    fn mu(&self) -> PyMeasure {
        PyMeasure(self.0.mu.clone())
    }

    #[getter]
    fn mu_hat(&self) -> PyMeasure {
        PyMeasure(self.0.mu_hat.clone())
    }

    #[getter]
    fn tau(&self) -> f64 {
        self.0.tau
    }

    #[getter]
    fn sigma(&self) -> f64 {
        self.0.sigma
    }

    #[getter]
    fn verified_gap(&self) -> f64 {
        self.0.verified_gap
    }

    #[getter]
    fn gamma_amplitudes(&self) -> Vec<f64> {
        self.0.gamma.amplitudes().to_vec()
    }

    #[getter]
    fn gamma_supports(&self) -> Vec<f64> {
        self.0.gamma.supports().to_vec()
    }

    fn passes(&self) -> bool {
        self.0.passes()
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.0).map_err(|e| PyValueError::new_err(e.to_string()))
    }
}

/// `kind` is "number", "support" or "clustered" (the last needs `s`).
#[pyfunction]
#[pyo3(signature = (kind, n, omega, sigma, m_min = 1.0, s = None))]
fn construct(kind: &str, n: usize, omega: f64, sigma: f64, m_min: f64, s: Option<f64>) -> PyResult<PyPair> {
    let pair = match (kind, s) {
        ("number", _) => cons::construct_number_adversarial(n, omega, sigma, m_min),
        ("support", _) => cons::construct_support_adversarial(n, omega, sigma, m_min),
        ("clustered", Some(s)) => cons::construct_clustered_adversarial(n, s, omega, sigma, m_min),
        ("clustered", None) => return Err(PyValueError::new_err("clustered construction needs s")),
        _ => return Err(PyValueError::new_err(format!("unknown kind {kind:?}"))),
    };
    pair.map(PyPair).map_err(py_err)
}

/// `(estimated_n, singular_values, threshold)` for a fixed `s`.
#[pyfunction]
#[pyo3(signature = (meas, s, sigma = None))]
fn detect_count_fixed_s(meas: &PyMeasurement, s: usize, sigma: Option<f64>) -> PyResult<(usize, Vec<f64>, f64)> {
    let r = nd::detect_count_fixed_s(&meas.0, s, sigma.unwrap_or(meas.0.config.sigma)).map_err(py_err)?;
    Ok((r.estimated_n, r.singular_values, r.threshold))
}

#[pyfunction]
#[pyo3(signature = (meas, sigma = None))]
fn detect_count(meas: &PyMeasurement, sigma: Option<f64>) -> PyResult<usize> {
    nd::detect_count_sweep(&meas.0, sigma.unwrap_or(meas.0.config.sigma))
        .map(|(n, _)| n)
        .map_err(py_err)
}

#[pyfunction]
fn zeta_separation(n: usize, s: usize, sigma: f64, m_min: f64, omega: f64) -> PyResult<f64> {
    nd::zeta_separation(n, s, sigma, m_min, omega).map_err(py_err)
}

/// `(test_points, values)` of the MUSIC imaging function. `window` is `(start, end, step)`.
#[pyfunction]
#[pyo3(signature = (meas, n, window = None))]
fn music_image(meas: &PyMeasurement, n: usize, window: Option<(f64, f64, f64)>) -> PyResult<(Vec<f64>, Vec<f64>)> {
    let window = match window {
        Some((a, b, h)) => MusicWindow::new(a, b, h).map_err(py_err)?,
        None => MusicWindow::default_for(n, meas.0.config.omega, None),
    };
    let image = music::music_image(&meas.0, n, &window).map_err(py_err)?;
    Ok((image.test_points, image.values))
}

/// Peak locations with the default window and peak-selection parameters.
#[pyfunction]
#[pyo3(signature = (meas, n, d_min = None))]
fn music_peaks(meas: &PyMeasurement, n: usize, d_min: Option<f64>) -> PyResult<Vec<f64>> {
    let window = MusicWindow::default_for(n, meas.0.config.omega, d_min);
    let image = music::music_image(&meas.0, n, &window).map_err(py_err)?;
    Ok(music::select_peaks(&image, &PeakSelectionParams::default_for(&image)))
}

/// True when MUSIC recovers `mu` stably from `meas`.
#[pyfunction]
fn run_single_experiment(mu: &PyMeasure, meas: &PyMeasurement, n: usize) -> PyResult<bool> {
    music::run_single_experiment(&mu.0, &meas.0, n)
        .map(|r| r == Recovery::Stable)
        .map_err(py_err)
}

#[pyfunction]
fn separation_bounds<'py>(py: Python<'py>, n: usize, omega: f64, sigma: f64, m_min: f64) -> PyResult<Bound<'py, PyDict>> {
    let b = music::separation_bounds(n, omega, sigma, m_min).map_err(py_err)?;
    let d = PyDict::new(py);
    d.set_item("num_lower", b.num_lower)?;
    d.set_item("num_upper", b.num_upper)?;
    d.set_item("supp_lower", b.supp_lower)?;
    d.set_item("supp_upper", b.supp_upper)?;
    Ok(d)
}

/// Runs a phase sweep with the default sampling ranges. Returns the fitted slope (None when
/// every trial has the same outcome) and `(log_srf, log_snr, success)` records.
#[pyfunction]
#[pyo3(signature = (task, n, trials, seed = 0))]
fn run_phase_sweep(
    py: Python<'_>,
    task: &str,
    n: usize,
    trials: usize,
    seed: u64,
) -> PyResult<(Option<f64>, Vec<(f64, f64, bool)>)> {
    let task = match task {
        "number" => Task::NumberDetection,
        "location" => Task::LocationRecovery,
        _ => return Err(PyValueError::new_err(format!("unknown task {task:?}"))),
    };
    let mut diagram = py
        .detach(|| exp::run_phase_sweep(task, n, trials, &SamplingRanges::default(), seed))
        .map_err(py_err)?;
    let slope = match exp::fit_boundary_slope(&mut diagram) {
        Ok(a) => Some(a),
        Err(superres_core::Error::DegenerateLabels) => None,
        Err(e) => return Err(py_err(e)),
    };
    let records = diagram.records.iter().map(|r| (r.log_srf, r.log_snr, r.success)).collect();
    Ok((slope, records))
}

#[pyfunction]
#[pyo3(signature = (meas, grid, n_max = 2))]
fn l0_grid_oracle(meas: &PyMeasurement, grid: Vec<f64>, n_max: usize) -> PyResult<Option<PyMeasure>> {
    exp::l0_grid_oracle(&meas.0, &grid, n_max)
        .map(|m| m.map(PyMeasure))
        .map_err(py_err)
}

/// `(index, ln value)` of the extremal `prod_{x != z} |x - z|`; `mode` is "min" or "max".
#[pyfunction]
fn extremal_product(points: Vec<f64>, mode: &str) -> PyResult<(usize, f64)> {
    let mode = match mode {
        "min" => Extremum::MinOver,
        "max" => Extremum::MaxOver,
        _ => return Err(PyValueError::new_err(format!("unknown mode {mode:?}"))),
    };
    cons::extremal_product_bruteforce(&points, mode).map_err(py_err)
}

#[pymodule]
fn superres(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMeasure>()?;
    m.add_class::<PyMeasurement>()?;
    m.add_class::<PyPair>()?;
    m.add_function(wrap_pyfunction!(construct, m)?)?;
    m.add_function(wrap_pyfunction!(detect_count_fixed_s, m)?)?;
    m.add_function(wrap_pyfunction!(detect_count, m)?)?;
    m.add_function(wrap_pyfunction!(zeta_separation, m)?)?;
    m.add_function(wrap_pyfunction!(music_image, m)?)?;
    m.add_function(wrap_pyfunction!(music_peaks, m)?)?;
    m.add_function(wrap_pyfunction!(run_single_experiment, m)?)?;
    m.add_function(wrap_pyfunction!(separation_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(run_phase_sweep, m)?)?;
    m.add_function(wrap_pyfunction!(l0_grid_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(extremal_product, m)?)?;
    Ok(())
}
