//! Python bindings for `riesz_denoise`.
//!
//! ```python
//! import pyriesz
//! clean = pyriesz.read_pgm("data/lena.pgm")
//! noisy, corrupted = pyriesz.inject_spn(clean, density=0.9, seed=42)
//! restored = pyriesz.awmrmf(noisy)
//! print(pyriesz.psnr(clean, restored), pyriesz.ssim(clean, restored))
//! ```

use pyo3::exceptions::{PyFileExistsError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyBytes;

use riesz_denoise as core;
use riesz_denoise::{Error, FilterKind, FilterParams, SsimMode, SsimParams, Window};

fn to_py(e: Error) -> PyErr {
    match e {
        // io::Error maps onto the matching OSError subclass
        Error::Io(e) | Error::Pgm(core::PgmError::Io(e)) => e.into(),
        e @ Error::Pgm(core::PgmError::Exists(_)) => PyFileExistsError::new_err(e.to_string()),
        e => PyValueError::new_err(e.to_string()),
    }
}

/// An 8-bit grayscale image stored row-major.
#[pyclass(name = "GrayImage", eq, from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyGrayImage {
    inner: core::GrayImage,
}

impl From<core::GrayImage> for PyGrayImage {
    fn from(inner: core::GrayImage) -> Self {
        Self { inner }
    }
}

#[pymethods]
impl PyGrayImage {
    #[new]
    fn new(width: usize, height: usize, pixels: Vec<u8>) -> PyResult<Self> {
        core::GrayImage::new(width, height, pixels)
            .map(Self::from)
            .map_err(to_py)
    }

    /// Build an image from a list of equal-length rows.
    #[staticmethod]
    fn from_rows(rows: Vec<Vec<u8>>) -> PyResult<Self> {
        core::GrayImage::from_rows(&rows)
            .map(Self::from)
            .map_err(to_py)
    }

    #[getter]
    fn width(&self) -> usize {
        self.inner.width()
    }

    #[getter]
    fn height(&self) -> usize {
        self.inner.height()
    }

    /// Raw row-major pixel bytes.
    fn pixels<'py>(&self, py: Python<'py>) -> Bound<'py, PyBytes> {
        PyBytes::new(py, self.inner.pixels())
    }

    /// Rows as lists of ints (a `Vec<u8>` would surface as `bytes`).
    fn to_rows(&self) -> Vec<Vec<u16>> {
        self.inner
            .rows()
            .map(|r| r.iter().map(|&v| u16::from(v)).collect())
            .collect()
    }

    fn get(&self, row: usize, col: usize) -> PyResult<u8> {
        if row >= self.inner.height() || col >= self.inner.width() {
            return Err(PyValueError::new_err(format!(
                "pixel ({row}, {col}) out of range"
            )));
        }
        Ok(self.inner.get(row, col))
    }

    /// Number of pixels equal to 0 or 255.
    fn noisy_count(&self) -> usize {
        self.inner.noisy_count()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("GrayImage({}x{})", self.inner.width(), self.inner.height())
    }
}

fn parse_filter(name: &str) -> PyResult<FilterKind> {
    name.parse().map_err(to_py)
}

fn parse_ssim_mode(mode: &str) -> PyResult<SsimParams> {
    let mode = match mode {
        "windowed" => SsimMode::Windowed,
        "global" => SsimMode::Global,
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown SSIM mode {other:?}; expected 'windowed' or 'global'"
            )))
        }
    };
    Ok(SsimParams {
        mode,
        ..SsimParams::default()
    })
}

fn window_from_rows(rows: Vec<Vec<f64>>) -> PyResult<Window> {
    let side = rows.len();
    if side < 3 || side.is_multiple_of(2) || rows.iter().any(|r| r.len() != side) {
        return Err(PyValueError::new_err(
            "window must be a square list of rows with odd side >= 3",
        ));
    }
    Window::from_entries(side / 2, rows.concat()).map_err(to_py)
}

/// "noisy" for 0 and 255, "regular" otherwise.
#[pyfunction]
fn classify_entry(value: u8) -> &'static str {
    match core::classify_entry(value) {
        core::EntryClass::Noisy => "noisy",
        core::EntryClass::Regular => "regular",
    }
}

/// Binary matrix: 1 for regular entries, 0 for noisy ones.
#[pyfunction]
fn noise_mask(img: &PyGrayImage) -> Vec<Vec<u16>> {
    core::noise_mask(&img.inner)
        .to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(u16::from).collect())
        .collect()
}

/// Symmetric pad by `t` rows and columns on each side.
#[pyfunction]
fn sym_pad(img: &PyGrayImage, t: usize) -> PyResult<Vec<Vec<f64>>> {
    core::sym_pad(&img.inner, t)
        .map(|p| p.to_rows())
        .map_err(to_py)
}

/// The (2k+1)x(2k+1) window around 0-based pixel (row, col) of the image
/// padded by `pad` (defaults to k).
#[pyfunction]
#[pyo3(signature = (img, row, col, k, pad=None))]
fn window(
    img: &PyGrayImage,
    row: usize,
    col: usize,
    k: usize,
    pad: Option<usize>,
) -> PyResult<Vec<Vec<f64>>> {
    let padded = core::sym_pad(&img.inner, pad.unwrap_or(k)).map_err(to_py)?;
    core::window(&padded, row, col, k)
        .map(|w| w.to_rows())
        .map_err(to_py)
}

#[pyfunction]
fn pixel_similarity(row: usize, col: usize, k: usize) -> f64 {
    core::pixel_similarity(row, col, k)
}

#[pyfunction]
fn pixel_weight(row: usize, col: usize, k: usize) -> f64 {
    core::pixel_weight(row, col, k)
}

#[pyfunction]
fn modified_pixel_weight(row: usize, col: usize, k: usize) -> f64 {
    core::modified_pixel_weight(row, col, k)
}

#[pyfunction]
fn riesz_mean(window: Vec<Vec<f64>>) -> PyResult<f64> {
    core::riesz_mean(&window_from_rows(window)?).map_err(to_py)
}

#[pyfunction]
fn modified_riesz_mean(window: Vec<Vec<f64>>) -> PyResult<f64> {
    core::modified_riesz_mean(&window_from_rows(window)?).map_err(to_py)
}

#[pyfunction]
fn weight_modified_riesz_mean(window: Vec<Vec<f64>>) -> PyResult<f64> {
    core::weight_modified_riesz_mean(&window_from_rows(window)?).map_err(to_py)
}

#[pyfunction]
fn window_median(window: Vec<Vec<f64>>) -> PyResult<f64> {
    Ok(core::window_median(&window_from_rows(window)?))
}

#[pyfunction]
fn armf(py: Python<'_>, img: &PyGrayImage) -> PyResult<PyGrayImage> {
    py.detach(|| core::armf(&img.inner))
        .map(Into::into)
        .map_err(to_py)
}

#[pyfunction]
fn damrmf(py: Python<'_>, img: &PyGrayImage) -> PyResult<PyGrayImage> {
    py.detach(|| core::damrmf(&img.inner))
        .map(Into::into)
        .map_err(to_py)
}

#[pyfunction]
fn awmrmf(py: Python<'_>, img: &PyGrayImage) -> PyResult<PyGrayImage> {
    py.detach(|| core::awmrmf(&img.inner))
        .map(Into::into)
        .map_err(to_py)
}

/// Standard median filter with a (2r+1)x(2r+1) window.
#[pyfunction]
#[pyo3(signature = (img, radius=1))]
fn smf(py: Python<'_>, img: &PyGrayImage, radius: usize) -> PyResult<PyGrayImage> {
    py.detach(|| core::smf_baseline(&img.inner, radius))
        .map(Into::into)
        .map_err(to_py)
}

/// Run a filter by name and return (image, seconds).
#[pyfunction]
#[pyo3(signature = (img, filter, t_start=None, smf_radius=1))]
fn denoise(
    py: Python<'_>,
    img: &PyGrayImage,
    filter: &str,
    t_start: Option<usize>,
    smf_radius: usize,
) -> PyResult<(PyGrayImage, f64)> {
    let kind = parse_filter(filter)?;
    let params = FilterParams {
        t_start,
        smf_radius,
    };
    let out = py
        .detach(|| core::denoise_with(&img.inner, kind, &params))
        .map_err(to_py)?;
    Ok((out.image.into(), out.seconds))
}

/// Corrupt exactly floor(density * pixels) pixels; returns (image, corrupted indices).
#[pyfunction]
#[pyo3(signature = (img, density, seed, salt_fraction=0.5))]
fn inject_spn(
    img: &PyGrayImage,
    density: f64,
    seed: u64,
    salt_fraction: f64,
) -> PyResult<(PyGrayImage, Vec<usize>)> {
    let spec = core::NoiseSpec::with_salt_fraction(density, salt_fraction, seed).map_err(to_py)?;
    let (noisy, record) = core::inject_spn(&img.inner, &spec);
    Ok((noisy.into(), record.indices().collect()))
}

#[pyfunction]
fn mse(x: &PyGrayImage, y: &PyGrayImage) -> PyResult<f64> {
    core::mse(&x.inner, &y.inner).map_err(to_py)
}

/// PSNR in dB; `inf` for identical images.
#[pyfunction]
fn psnr(x: &PyGrayImage, y: &PyGrayImage) -> PyResult<f64> {
    core::psnr(&x.inner, &y.inner).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (x, y, mode="windowed"))]
fn ssim(x: &PyGrayImage, y: &PyGrayImage, mode: &str) -> PyResult<f64> {
    core::ssim(&x.inner, &y.inner, &parse_ssim_mode(mode)?).map_err(to_py)
}

#[pyfunction]
fn read_pgm(path: std::path::PathBuf) -> PyResult<PyGrayImage> {
    core::read_pgm(path)
        .map(Into::into)
        .map_err(|e| to_py(e.into()))
}

#[pyfunction]
#[pyo3(signature = (img, path, force=false))]
fn write_pgm(img: &PyGrayImage, path: std::path::PathBuf, force: bool) -> PyResult<()> {
    core::write_pgm(&img.inner, path, force).map_err(|e| to_py(e.into()))
}

#[pymodule]
fn pyriesz(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGrayImage>()?;
    m.add("FILTERS", FilterKind::ALL.map(FilterKind::name).to_vec())?;
    m.add_function(wrap_pyfunction!(classify_entry, m)?)?;
    m.add_function(wrap_pyfunction!(noise_mask, m)?)?;
    m.add_function(wrap_pyfunction!(sym_pad, m)?)?;
    m.add_function(wrap_pyfunction!(window, m)?)?;
    m.add_function(wrap_pyfunction!(pixel_similarity, m)?)?;
    m.add_function(wrap_pyfunction!(pixel_weight, m)?)?;
    m.add_function(wrap_pyfunction!(modified_pixel_weight, m)?)?;
    m.add_function(wrap_pyfunction!(riesz_mean, m)?)?;
    m.add_function(wrap_pyfunction!(modified_riesz_mean, m)?)?;
    m.add_function(wrap_pyfunction!(weight_modified_riesz_mean, m)?)?;
    m.add_function(wrap_pyfunction!(window_median, m)?)?;
    m.add_function(wrap_pyfunction!(armf, m)?)?;
    m.add_function(wrap_pyfunction!(damrmf, m)?)?;
    m.add_function(wrap_pyfunction!(awmrmf, m)?)?;
    m.add_function(wrap_pyfunction!(smf, m)?)?;
    m.add_function(wrap_pyfunction!(denoise, m)?)?;
    m.add_function(wrap_pyfunction!(inject_spn, m)?)?;
    m.add_function(wrap_pyfunction!(mse, m)?)?;
    m.add_function(wrap_pyfunction!(psnr, m)?)?;
    m.add_function(wrap_pyfunction!(ssim, m)?)?;
    m.add_function(wrap_pyfunction!(read_pgm, m)?)?;
    m.add_function(wrap_pyfunction!(write_pgm, m)?)?;
    Ok(())
}
