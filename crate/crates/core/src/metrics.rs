//! MSE, PSNR and SSIM.

use crate::error::{Error, Result};
use crate::image::GrayImage;

/// Peak intensity of 8-bit images.
pub const PEAK: f64 = 255.0;

fn check_dims(x: &GrayImage, y: &GrayImage) -> Result<()> {
    if !x.same_dims(y) {
        return Err(Error::DimensionMismatch(
            x.width(),
            x.height(),
            y.width(),
            y.height(),
        ));
    }
    Ok(())
}

pub fn mse(x: &GrayImage, y: &GrayImage) -> Result<f64> {
    check_dims(x, y)?;
    let sum: f64 = x
        .pixels()
        .iter()
        .zip(y.pixels())
        .map(|(&a, &b)| {
            let d = f64::from(a) - f64::from(b);
            d * d
        })
        .sum();
    Ok(sum / x.len() as f64)
}

/// PSNR in decibels for a given MSE; `+inf` when the error is zero.
pub fn psnr_from_mse(mse: f64) -> f64 {
    if mse == 0.0 {
        f64::INFINITY
    } else {
        10.0 * (PEAK * PEAK / mse).log10()
    }
}

pub fn psnr(x: &GrayImage, y: &GrayImage) -> Result<f64> {
    mse(x, y).map(psnr_from_mse)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SsimMode {
    /// Mean of local SSIM over every 11×11 Gaussian-weighted window (σ = 1.5)
    /// that fits inside the image.
    #[default]
    Windowed,
    /// One evaluation with whole-image statistics.
    Global,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SsimParams {
    pub k1: f64,
    pub k2: f64,
    pub dynamic_range: f64,
    pub mode: SsimMode,
}

impl Default for SsimParams {
    fn default() -> Self {
        Self {
            k1: 0.01,
            k2: 0.03,
            dynamic_range: PEAK,
            mode: SsimMode::Windowed,
        }
    }
}

impl SsimParams {
    pub fn global() -> Self {
        Self {
            mode: SsimMode::Global,
            ..Self::default()
        }
    }

    pub fn c1(&self) -> f64 {
        let v = self.k1 * self.dynamic_range;
        v * v
    }

    pub fn c2(&self) -> f64 {
        let v = self.k2 * self.dynamic_range;
        v * v
    }
}

pub const SSIM_WINDOW: usize = 11;
pub const SSIM_SIGMA: f64 = 1.5;

/// Normalized 1-D Gaussian taps; the 2-D window is their outer product.
pub fn gaussian_taps(size: usize, sigma: f64) -> Vec<f64> {
    let center = (size as f64 - 1.0) / 2.0;
    let raw: Vec<f64> = (0..size)
        .map(|i| {
            let d = i as f64 - center;
            (-(d * d) / (2.0 * sigma * sigma)).exp()
        })
        .collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|v| v / total).collect()
}

/// Local moments of one window (or of the whole image), shared by both modes.
///
/// Moments are taken about a reference intensity so constant regions give
/// exactly zero variance.
#[derive(Clone, Copy, Debug)]
struct Moments {
    mean_x: f64,
    mean_y: f64,
    var_x: f64,
    var_y: f64,
    cov: f64,
}

fn ssim_from_moments(m: &Moments, c1: f64, c2: f64) -> f64 {
    ((2.0 * m.mean_x * m.mean_y + c1) * (2.0 * m.cov + c2))
        / ((m.mean_x * m.mean_x + m.mean_y * m.mean_y + c1) * (m.var_x + m.var_y + c2))
}

pub fn ssim(x: &GrayImage, y: &GrayImage, params: &SsimParams) -> Result<f64> {
    check_dims(x, y)?;
    let (c1, c2) = (params.c1(), params.c2());
    let x0 = f64::from(x.pixels()[0]);
    let y0 = f64::from(y.pixels()[0]);
    let dx: Vec<f64> = x.pixels().iter().map(|&v| f64::from(v) - x0).collect();
    let dy: Vec<f64> = y.pixels().iter().map(|&v| f64::from(v) - y0).collect();

    match params.mode {
        SsimMode::Global => {
            let n = dx.len() as f64;
            let (mut sx, mut sy, mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0, 0.0, 0.0);
            for (&a, &b) in dx.iter().zip(&dy) {
                sx += a;
                sy += b;
                sxx += a * a;
                syy += b * b;
                sxy += a * b;
            }
            let (mx, my) = (sx / n, sy / n);
            let m = Moments {
                mean_x: x0 + mx,
                mean_y: y0 + my,
                var_x: sxx / n - mx * mx,
                var_y: syy / n - my * my,
                cov: sxy / n - mx * my,
            };
            Ok(ssim_from_moments(&m, c1, c2))
        }
        SsimMode::Windowed => {
            let (w, h) = (x.width(), x.height());
            if w < SSIM_WINDOW || h < SSIM_WINDOW {
                return Err(Error::SsimWindow {
                    window: SSIM_WINDOW,
                    width: w,
                    height: h,
                });
            }
            let taps = gaussian_taps(SSIM_WINDOW, SSIM_SIGMA);
            let xx: Vec<f64> = dx.iter().map(|a| a * a).collect();
            let yy: Vec<f64> = dy.iter().map(|b| b * b).collect();
            let xy: Vec<f64> = dx.iter().zip(&dy).map(|(a, b)| a * b).collect();

            let mu_x = filter_valid(&dx, w, h, &taps);
            let mu_y = filter_valid(&dy, w, h, &taps);
            let e_xx = filter_valid(&xx, w, h, &taps);
            let e_yy = filter_valid(&yy, w, h, &taps);
            let e_xy = filter_valid(&xy, w, h, &taps);

            let local: Vec<f64> = (0..mu_x.len())
                .map(|i| {
                    let (mx, my) = (mu_x[i], mu_y[i]);
                    let m = Moments {
                        mean_x: x0 + mx,
                        mean_y: y0 + my,
                        var_x: e_xx[i] - mx * mx,
                        var_y: e_yy[i] - my * my,
                        cov: e_xy[i] - mx * my,
                    };
                    ssim_from_moments(&m, c1, c2)
                })
                .collect();
            // averaged about the first value so a uniform map stays exact
            let first = local[0];
            let spread: f64 = local.iter().map(|v| v - first).sum();
            Ok(first + spread / local.len() as f64)
        }
    }
}

/// Separable 'valid' correlation: output is (w - n + 1) × (h - n + 1).
fn filter_valid(data: &[f64], w: usize, h: usize, taps: &[f64]) -> Vec<f64> {
    let n = taps.len();
    let ow = w - n + 1;
    let oh = h - n + 1;
    let mut horiz = vec![0.0; ow * h];
    for r in 0..h {
        let row = &data[r * w..(r + 1) * w];
        for c in 0..ow {
            horiz[r * ow + c] = taps.iter().zip(&row[c..c + n]).map(|(t, v)| t * v).sum();
        }
    }
    let mut out = vec![0.0; ow * oh];
    for r in 0..oh {
        for c in 0..ow {
            out[r * ow + c] = taps
                .iter()
                .enumerate()
                .map(|(i, t)| t * horiz[(r + i) * ow + c])
                .sum();
        }
    }
    out
}

/// Quality of one denoising run against the clean original.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QualityReport {
    pub mse: f64,
    pub psnr: f64,
    pub ssim: f64,
    pub seconds: f64,
}

impl QualityReport {
    pub fn measure(
        original: &GrayImage,
        restored: &GrayImage,
        seconds: f64,
        params: &SsimParams,
    ) -> Result<Self> {
        let mse = mse(original, restored)?;
        Ok(Self {
            mse,
            psnr: psnr_from_mse(mse),
            ssim: ssim(original, restored, params)?,
            seconds,
        })
    }
}

/// Arithmetic mean of every field. Refuses empty input and infinite PSNR.
pub fn aggregate(rows: &[QualityReport]) -> Result<QualityReport> {
    if rows.is_empty() {
        return Err(Error::EmptyAggregate);
    }
    if let Some(i) = rows.iter().position(|r| !r.psnr.is_finite()) {
        return Err(Error::InfinitePsnr(format!("row {i}")));
    }
    let n = rows.len() as f64;
    let mean = |f: fn(&QualityReport) -> f64| rows.iter().map(f).sum::<f64>() / n;
    Ok(QualityReport {
        mse: mean(|r| r.mse),
        psnr: mean(|r| r.psnr),
        ssim: mean(|r| r.ssim),
        seconds: mean(|r| r.seconds),
    })
}
