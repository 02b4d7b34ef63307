//! Image matrices, noise classification, symmetric padding and windowing.
//!
//! Coordinates are 0-based throughout the Rust API: pixel `(row, col)` here is
//! entry `a_{(row+1)(col+1)}` in 1-based matrix notation, and window cell
//! `(r, c)` is cell `(r+1, c+1)`. The window center is cell `(k, k)`.

use crate::error::{Error, Result};

/// Lowest and highest 8-bit intensities; both mark a pixel as noisy.
pub const BLACK: u8 = 0;
pub const WHITE: u8 = 255;

/// Whether an intensity carries signal or is a salt/pepper impulse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EntryClass {
    Noisy,
    Regular,
}

/// Classifies an 8-bit intensity: 0 and 255 are noisy, everything else is regular.
pub fn classify_entry(v: u8) -> EntryClass {
    if v == BLACK || v == WHITE {
        EntryClass::Noisy
    } else {
        EntryClass::Regular
    }
}

/// Pixel types an [`Image`] can hold.
pub trait Intensity: Copy + Send + Sync + 'static {
    fn to_f64(self) -> f64;
    fn is_noisy(self) -> bool;
    fn validate(index: usize, v: Self) -> Result<()>;
}

impl Intensity for u8 {
    #[inline]
    fn to_f64(self) -> f64 {
        f64::from(self)
    }

    #[inline]
    fn is_noisy(self) -> bool {
        classify_entry(self) == EntryClass::Noisy
    }

    fn validate(_: usize, _: Self) -> Result<()> {
        Ok(())
    }
}

impl Intensity for f64 {
    #[inline]
    fn to_f64(self) -> f64 {
        self
    }

    /// Exactly 0.0 or 255.0. Repaired values are weighted means of regular
    /// entries and therefore never land on either extreme.
    #[inline]
    fn is_noisy(self) -> bool {
        self == 0.0 || self == 255.0
    }

    fn validate(index: usize, value: Self) -> Result<()> {
        if !value.is_finite() {
            return Err(Error::NonFinite { index, value });
        }
        if !(0.0..=255.0).contains(&value) {
            return Err(Error::IntensityRange { index, value });
        }
        Ok(())
    }
}

/// A row-major single-channel image.
#[derive(Clone, Debug, PartialEq)]
pub struct Image<T> {
    width: usize,
    height: usize,
    pixels: Vec<T>,
}

/// 8-bit grayscale image.
pub type GrayImage = Image<u8>;

/// Double-precision working copy used inside the filters. Values stay in [0, 255].
pub type WorkingImage = Image<f64>;

impl<T: Intensity> Image<T> {
    pub fn new(width: usize, height: usize, pixels: Vec<T>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::EmptyImage { width, height });
        }
        let expected = width * height;
        if pixels.len() != expected {
            return Err(Error::BufferSize {
                width,
                height,
                expected,
                actual: pixels.len(),
            });
        }
        for (i, &v) in pixels.iter().enumerate() {
            T::validate(i, v)?;
        }
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    /// Builds an image from equal-length rows.
    pub fn from_rows<R: AsRef<[T]>>(rows: &[R]) -> Result<Self> {
        let height = rows.len();
        let width = rows.first().map_or(0, |r| r.as_ref().len());
        let mut pixels = Vec::with_capacity(width * height);
        for r in rows {
            let r = r.as_ref();
            if r.len() != width {
                return Err(Error::BufferSize {
                    width,
                    height,
                    expected: width * height,
                    actual: pixels.len() + r.len(),
                });
            }
            pixels.extend_from_slice(r);
        }
        Self::new(width, height, pixels)
    }

    pub fn filled(width: usize, height: usize, value: T) -> Result<Self> {
        Self::new(width, height, vec![value; width * height])
    }

    /// Wraps a buffer that is known to satisfy the invariants.
    pub(crate) fn from_raw(width: usize, height: usize, pixels: Vec<T>) -> Self {
        debug_assert_eq!(pixels.len(), width * height);
        Self {
            width,
            height,
            pixels,
        }
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.pixels.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.pixels.is_empty()
    }

    #[inline]
    pub fn pixels(&self) -> &[T] {
        &self.pixels
    }

    pub fn into_pixels(self) -> Vec<T> {
        self.pixels
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> T {
        self.pixels[row * self.width + col]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.pixels.chunks_exact(self.width)
    }

    pub fn same_dims<U>(&self, other: &Image<U>) -> bool {
        self.width == other.width && self.height == other.height
    }

    pub fn noisy_count(&self) -> usize {
        self.pixels.iter().filter(|v| v.is_noisy()).count()
    }
}

impl GrayImage {
    /// Sets one pixel. Any `u8` is a valid intensity.
    pub fn set(&mut self, row: usize, col: usize, value: u8) {
        self.pixels[row * self.width + col] = value;
    }

    pub fn pixels_mut(&mut self) -> &mut [u8] {
        &mut self.pixels
    }
}

/// Value-preserving widening to double precision.
pub fn to_double(img: &GrayImage) -> WorkingImage {
    Image::from_raw(
        img.width,
        img.height,
        img.pixels.iter().map(|&v| f64::from(v)).collect(),
    )
}

/// Rounds half away from zero, then clamps to [0, 255].
pub fn to_uint8(img: &WorkingImage) -> Result<GrayImage> {
    let pixels = img
        .pixels
        .iter()
        .enumerate()
        .map(|(index, &value)| {
            if value.is_finite() {
                Ok(value.round().clamp(0.0, 255.0) as u8)
            } else {
                Err(Error::NonFinite { index, value })
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Image::from_raw(img.width, img.height, pixels))
}

/// Binary matrix of an image: `true` (1) for regular entries, `false` (0) for noisy ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NoiseMask {
    width: usize,
    height: usize,
    bits: Vec<bool>,
}

impl NoiseMask {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    #[inline]
    pub fn is_regular(&self, row: usize, col: usize) -> bool {
        self.bits[row * self.width + col]
    }

    /// The mask as 0/1 rows.
    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        self.bits
            .chunks_exact(self.width)
            .map(|r| r.iter().map(|&b| u8::from(b)).collect())
            .collect()
    }

    pub fn regular_count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }
}

pub fn noise_mask<T: Intensity>(img: &Image<T>) -> NoiseMask {
    NoiseMask {
        width: img.width,
        height: img.height,
        bits: img.pixels.iter().map(|v| !v.is_noisy()).collect(),
    }
}

/// Source index for padded coordinate `i` along an axis of length `n`.
///
/// Mirror with edge duplication (`… x1 x0 | x0 x1 … xn-1 | xn-1 xn-2 …`),
/// repeated periodically when the pad is wider than the axis.
#[inline]
pub(crate) fn mirror_index(i: isize, n: usize) -> usize {
    let period = 2 * n as isize;
    let m = i.rem_euclid(period) as usize;
    if m < n {
        m
    } else {
        2 * n - 1 - m
    }
}

/// An image extended by `radius` mirrored rows and columns on every side,
/// together with the padded binary matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct PaddedImage {
    radius: usize,
    src_width: usize,
    src_height: usize,
    values: Vec<f64>,
    bits: Vec<bool>,
}

impl PaddedImage {
    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn source_width(&self) -> usize {
        self.src_width
    }

    pub fn source_height(&self) -> usize {
        self.src_height
    }

    pub fn width(&self) -> usize {
        self.src_width + 2 * self.radius
    }

    pub fn height(&self) -> usize {
        self.src_height + 2 * self.radius
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Value at 0-based padded coordinates.
    #[inline]
    pub fn value(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.width() + col]
    }

    #[inline]
    pub fn is_regular(&self, row: usize, col: usize) -> bool {
        self.bits[row * self.width() + col]
    }

    /// Padded values as rows.
    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.values
            .chunks_exact(self.width())
            .map(<[f64]>::to_vec)
            .collect()
    }

    /// The block at offset `(radius, radius)` with the source dimensions.
    pub fn interior(&self) -> WorkingImage {
        let w = self.width();
        let mut pixels = Vec::with_capacity(self.src_width * self.src_height);
        for r in 0..self.src_height {
            let start = (r + self.radius) * w + self.radius;
            pixels.extend_from_slice(&self.values[start..start + self.src_width]);
        }
        Image::from_raw(self.src_width, self.src_height, pixels)
    }
}

/// t-symmetric pad matrix. Requires `1 <= t <= min(width, height)`.
pub fn sym_pad<T: Intensity>(img: &Image<T>, t: usize) -> Result<PaddedImage> {
    let max = img.width.min(img.height);
    if t == 0 || t > max {
        return Err(Error::PadRadius {
            radius: t,
            max,
            width: img.width,
            height: img.height,
        });
    }
    Ok(pad_symmetric(img, t))
}

/// Same pattern as [`sym_pad`] without the radius bound; wide pads wrap the
/// mirror periodically.
pub(crate) fn pad_symmetric<T: Intensity>(img: &Image<T>, t: usize) -> PaddedImage {
    let pw = img.width + 2 * t;
    let ph = img.height + 2 * t;
    let cols: Vec<usize> = (0..pw)
        .map(|c| mirror_index(c as isize - t as isize, img.width))
        .collect();
    let mut values = Vec::with_capacity(pw * ph);
    let mut bits = Vec::with_capacity(pw * ph);
    for r in 0..ph {
        let src = mirror_index(r as isize - t as isize, img.height);
        let row = &img.pixels[src * img.width..(src + 1) * img.width];
        for &c in &cols {
            values.push(row[c].to_f64());
            bits.push(!row[c].is_noisy());
        }
    }
    PaddedImage {
        radius: t,
        src_width: img.width,
        src_height: img.height,
        values,
        bits,
    }
}

/// The (2k+1)×(2k+1) neighborhood of one pixel taken from a padded image.
#[derive(Clone, Debug, PartialEq)]
pub struct Window {
    radius: usize,
    entries: Vec<f64>,
    regular: Vec<bool>,
}

impl Window {
    /// Builds a window from raw entries; the regular set is derived from the values.
    pub fn from_entries(radius: usize, entries: Vec<f64>) -> Result<Self> {
        let side = 2 * radius + 1;
        if radius == 0 || entries.len() != side * side {
            return Err(Error::BufferSize {
                width: side,
                height: side,
                expected: side * side,
                actual: entries.len(),
            });
        }
        let regular = entries.iter().map(|v| !v.is_noisy()).collect();
        Ok(Self {
            radius,
            entries,
            regular,
        })
    }

    #[inline]
    pub fn radius(&self) -> usize {
        self.radius
    }

    #[inline]
    pub fn side(&self) -> usize {
        2 * self.radius + 1
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    #[inline]
    pub fn entry(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.side() + col]
    }

    pub fn center(&self) -> f64 {
        self.entry(self.radius, self.radius)
    }

    #[inline]
    pub fn is_regular(&self, row: usize, col: usize) -> bool {
        self.regular[row * self.side() + col]
    }

    /// Regular cells in row-major order, 0-based within the window.
    pub fn regular_set(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let side = self.side();
        self.regular
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(move |(i, _)| (i / side, i % side))
    }

    /// True when no entry is regular (the window's binary matrix is all zeros).
    pub fn is_null(&self) -> bool {
        !self.regular.iter().any(|&b| b)
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.entries
            .chunks_exact(self.side())
            .map(<[f64]>::to_vec)
            .collect()
    }
}

/// k-approximate matrix of pixel `(row, col)`; needs `1 <= k <= pad.radius()`.
pub fn window(pad: &PaddedImage, row: usize, col: usize, k: usize) -> Result<Window> {
    if row >= pad.src_height || col >= pad.src_width || k == 0 || k > pad.radius {
        return Err(Error::WindowOutOfRange {
            row,
            col,
            radius: k,
            pad_radius: pad.radius,
            width: pad.src_width,
            height: pad.src_height,
        });
    }
    let side = 2 * k + 1;
    let pw = pad.width();
    let top = row + pad.radius - k;
    let left = col + pad.radius - k;
    let mut entries = Vec::with_capacity(side * side);
    let mut regular = Vec::with_capacity(side * side);
    for r in top..top + side {
        let start = r * pw + left;
        entries.extend_from_slice(&pad.values[start..start + side]);
        regular.extend_from_slice(&pad.bits[start..start + side]);
    }
    Ok(Window {
        radius: k,
        entries,
        regular,
    })
}
