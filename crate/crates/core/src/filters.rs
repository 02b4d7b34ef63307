//! Adaptive multi-pass Riesz-mean filters and a standard median baseline.
//!
//! Each adaptive filter runs passes `t = t_start, …, 1`. A pass pads the
//! current image by `t`, and every noisy pixel grows its window `k = 1..=t`:
//!
//! - ARmF assigns the Riesz mean of the first window with a regular entry and
//!   stops.
//! - DAMRmF assigns the modified Riesz mean of the first window whose median
//!   lies strictly inside (0, 255) and stops.
//! - AWMRmF does not stop: it assigns the weight-modified Riesz mean of every
//!   window with a regular entry, so the largest such window decides.
//!
//! Within a pass every read, including the "is this pixel still noisy" test,
//! sees the image as it was when the pass started; repairs become visible to
//! the next pass. Results are therefore independent of visitation order and
//! thread count.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::image::{pad_symmetric, to_double, to_uint8, GrayImage, Image, Intensity, WorkingImage};
use crate::kernels::{median_in_place, weighted_mean_raw, Kernel, KernelWeights};

/// Adaptive filters refuse images smaller than this in either dimension.
pub const MIN_DIMENSION: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FilterKind {
    /// Adaptive Riesz mean filter.
    Armf,
    /// Different adaptive modified Riesz mean filter.
    Damrmf,
    /// Adaptive weight modified Riesz mean filter.
    Awmrmf,
    /// Standard median filter baseline.
    Smf,
}

impl FilterKind {
    pub const ALL: [FilterKind; 4] = [
        FilterKind::Armf,
        FilterKind::Damrmf,
        FilterKind::Awmrmf,
        FilterKind::Smf,
    ];

    pub const ADAPTIVE: [FilterKind; 3] =
        [FilterKind::Armf, FilterKind::Damrmf, FilterKind::Awmrmf];

    pub fn name(self) -> &'static str {
        match self {
            FilterKind::Armf => "armf",
            FilterKind::Damrmf => "damrmf",
            FilterKind::Awmrmf => "awmrmf",
            FilterKind::Smf => "smf",
        }
    }

    pub fn is_adaptive(self) -> bool {
        self != FilterKind::Smf
    }

    /// Outer-loop start radius of the adaptive filters.
    pub fn default_t_start(self) -> Option<usize> {
        match self {
            FilterKind::Armf | FilterKind::Damrmf => Some(5),
            FilterKind::Awmrmf => Some(6),
            FilterKind::Smf => None,
        }
    }

    fn kernel(self) -> Option<Kernel> {
        match self {
            FilterKind::Armf => Some(Kernel::Similarity),
            FilterKind::Damrmf => Some(Kernel::PixelWeight),
            FilterKind::Awmrmf => Some(Kernel::ModifiedPixelWeight),
            FilterKind::Smf => None,
        }
    }
}

impl fmt::Display for FilterKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FilterKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FilterKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownFilter(s.to_owned()))
    }
}

/// Tuning knobs. The defaults reproduce the published pass schedules.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FilterParams {
    /// Overrides the outer-loop start radius of the adaptive filters.
    pub t_start: Option<usize>,
    /// Window radius of the median baseline.
    pub smf_radius: usize,
}

impl Default for FilterParams {
    fn default() -> Self {
        Self {
            t_start: None,
            smf_radius: 1,
        }
    }
}

/// One of the three adaptive filters with a fixed pass schedule.
#[derive(Clone, Debug)]
pub struct AdaptiveFilter {
    kind: FilterKind,
    t_start: usize,
    // weights[k - 1] is the table for window radius k
    weights: Vec<KernelWeights>,
}

impl AdaptiveFilter {
    pub fn new(kind: FilterKind) -> Result<Self> {
        Self::with_params(kind, &FilterParams::default())
    }

    pub fn with_params(kind: FilterKind, params: &FilterParams) -> Result<Self> {
        let (Some(kernel), Some(default_t)) = (kind.kernel(), kind.default_t_start()) else {
            return Err(Error::FilterParam(format!(
                "{kind} is not an adaptive filter"
            )));
        };
        let t_start = params.t_start.unwrap_or(default_t);
        if t_start == 0 {
            return Err(Error::FilterParam("t_start must be at least 1".into()));
        }
        let weights = (1..=t_start)
            .map(|k| KernelWeights::new(kernel, k))
            .collect();
        Ok(Self {
            kind,
            t_start,
            weights,
        })
    }

    pub fn kind(&self) -> FilterKind {
        self.kind
    }

    pub fn t_start(&self) -> usize {
        self.t_start
    }

    /// Denoises an 8-bit image.
    pub fn apply(&self, img: &GrayImage) -> Result<GrayImage> {
        check_min_dims(img)?;
        let out = self.apply_working(to_double(img));
        to_uint8(&out)
    }

    /// Runs every pass on a working image and returns the unrounded result.
    pub fn apply_working(&self, mut img: WorkingImage) -> WorkingImage {
        for t in (1..=self.t_start).rev() {
            img = self.pass(&img, t);
        }
        img
    }

    /// One pass with pad radius `t` (clamped to `t_start`).
    pub fn pass(&self, current: &WorkingImage, t: usize) -> WorkingImage {
        let t = t.clamp(1, self.t_start);
        let width = current.width();
        let pad = pad_symmetric(current, t);
        let pw = pad.width();
        let values = pad.values();
        let bits = pad.bits();
        let src = current.pixels();

        let mut out = src.to_vec();
        out.par_chunks_mut(width)
            .enumerate()
            .for_each(|(row, out_row)| {
                let mut scratch = Vec::with_capacity((2 * t + 1) * (2 * t + 1));
                for (col, cell) in out_row.iter_mut().enumerate() {
                    if !src[row * width + col].is_noisy() {
                        continue;
                    }
                    // AWMRmF never stops and its gate reads the pass-start value,
                    // so every non-empty window overwrites the previous mean.
                    // Windows are nested, hence only k = t can decide.
                    let first_k = if self.kind == FilterKind::Awmrmf {
                        t
                    } else {
                        1
                    };
                    for k in first_k..=t {
                        let side = 2 * k + 1;
                        let top = row + t - k;
                        let left = col + t - k;
                        let cells = (0..side).flat_map(|r| {
                            let base = (top + r) * pw + left;
                            (base..base + side).map(|i| (values[i], bits[i]))
                        });
                        let weights = self.weights[k - 1].weights();
                        match self.kind {
                            FilterKind::Armf => {
                                if let Some(m) = weighted_mean_raw(cells, weights) {
                                    *cell = m;
                                    break;
                                }
                            }
                            FilterKind::Damrmf => {
                                scratch.clear();
                                for r in 0..side {
                                    let base = (top + r) * pw + left;
                                    scratch.extend_from_slice(&values[base..base + side]);
                                }
                                let med = median_in_place(&mut scratch);
                                if med > 0.0 && med < 255.0 {
                                    // a median strictly inside (0, 255) is itself a regular entry
                                    if let Some(m) = weighted_mean_raw(cells, weights) {
                                        *cell = m;
                                    }
                                    break;
                                }
                            }
                            FilterKind::Awmrmf => {
                                if let Some(m) = weighted_mean_raw(cells, weights) {
                                    *cell = m;
                                }
                            }
                            FilterKind::Smf => unreachable!("rejected in constructor"),
                        }
                    }
                }
            });
        Image::from_raw(width, current.height(), out)
    }
}

fn check_min_dims<T: Intensity>(img: &Image<T>) -> Result<()> {
    if img.width() < MIN_DIMENSION || img.height() < MIN_DIMENSION {
        return Err(Error::ImageTooSmall {
            width: img.width(),
            height: img.height(),
            min: MIN_DIMENSION,
        });
    }
    Ok(())
}

/// Adaptive Riesz mean filter.
pub fn armf(img: &GrayImage) -> Result<GrayImage> {
    AdaptiveFilter::new(FilterKind::Armf)?.apply(img)
}

/// Different adaptive modified Riesz mean filter.
pub fn damrmf(img: &GrayImage) -> Result<GrayImage> {
    AdaptiveFilter::new(FilterKind::Damrmf)?.apply(img)
}

/// Adaptive weight modified Riesz mean filter.
pub fn awmrmf(img: &GrayImage) -> Result<GrayImage> {
    AdaptiveFilter::new(FilterKind::Awmrmf)?.apply(img)
}

/// Replaces every pixel by the median of its symmetric-padded
/// (2k+1)×(2k+1) neighborhood.
pub fn smf_baseline(img: &GrayImage, radius: usize) -> Result<GrayImage> {
    if radius == 0 {
        return Err(Error::FilterParam(
            "median radius must be at least 1".into(),
        ));
    }
    let width = img.width();
    let side = 2 * radius + 1;
    let pad = pad_symmetric(img, radius);
    let pw = pad.width();
    let values = pad.values();
    let mut out = vec![0u8; img.len()];
    out.par_chunks_mut(width)
        .enumerate()
        .for_each(|(row, out_row)| {
            let mut scratch = Vec::with_capacity(side * side);
            for (col, cell) in out_row.iter_mut().enumerate() {
                scratch.clear();
                for r in 0..side {
                    let base = (row + r) * pw + col;
                    scratch.extend_from_slice(&values[base..base + side]);
                }
                // medians of integer samples are integers
                *cell = median_in_place(&mut scratch) as u8;
            }
        });
    Ok(Image::from_raw(width, img.height(), out))
}

/// A filter output with the wall-clock time of the filter call.
#[derive(Clone, Debug, PartialEq)]
pub struct Denoised {
    pub image: GrayImage,
    pub seconds: f64,
}

pub fn denoise(img: &GrayImage, kind: FilterKind) -> Result<Denoised> {
    denoise_with(img, kind, &FilterParams::default())
}

pub fn denoise_with(img: &GrayImage, kind: FilterKind, params: &FilterParams) -> Result<Denoised> {
    let start = Instant::now();
    let image = match kind {
        FilterKind::Smf => smf_baseline(img, params.smf_radius)?,
        _ => AdaptiveFilter::with_params(kind, params)?.apply(img)?,
    };
    Ok(Denoised {
        image,
        seconds: start.elapsed().as_secs_f64(),
    })
}
