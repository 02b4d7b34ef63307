//! Seeded salt-and-pepper noise injection.
//!
//! Seed-to-noise mapping, version 1 (frozen):
//!
//! 1. The generator is ChaCha20 seeded with `ChaCha20Rng::seed_from_u64(seed)`.
//! 2. `n = floor(density * width * height)` positions are picked by a partial
//!    Fisher-Yates shuffle of `0..width*height`: for `i in 0..n`, swap `i`
//!    with `i + below(len - i)`. `below(m)` draws `next_u64` until the value
//!    falls under `floor(u64::MAX / m) * m` and returns it modulo `m`.
//! 3. For each picked position, in pick order, one more `next_u64` gives
//!    `u = (x >> 11) * 2^-53`; the pixel becomes 255 if `u < salt_fraction`,
//!    otherwise 0.

use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::image::GrayImage;

pub const NOISE_SCHEME_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NoiseSpec {
    density: f64,
    salt_fraction: f64,
    seed: u64,
}

impl NoiseSpec {
    /// Balanced salt and pepper.
    pub fn new(density: f64, seed: u64) -> Result<Self> {
        Self::with_salt_fraction(density, 0.5, seed)
    }

    pub fn with_salt_fraction(density: f64, salt_fraction: f64, seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&density) {
            return Err(Error::NoiseSpec(format!(
                "density {density} outside [0, 1]"
            )));
        }
        if !(0.0..=1.0).contains(&salt_fraction) {
            return Err(Error::NoiseSpec(format!(
                "salt fraction {salt_fraction} outside [0, 1]"
            )));
        }
        Ok(Self {
            density,
            salt_fraction,
            seed,
        })
    }

    pub fn density(&self) -> f64 {
        self.density
    }

    pub fn salt_fraction(&self) -> f64 {
        self.salt_fraction
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Number of pixels corrupted in an image of `pixels` entries.
    pub fn corrupted_count(&self, pixels: usize) -> usize {
        let exact = self.density * pixels as f64;
        let nearest = exact.round();
        // 0.29 * 100 evaluates to 28.999999999999996
        let n = if (exact - nearest).abs() < 1e-9 {
            nearest
        } else {
            exact.floor()
        };
        (n as usize).min(pixels)
    }
}

/// One overwritten pixel.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Corruption {
    /// Row-major pixel index.
    pub index: usize,
    pub original: u8,
    /// 0 or 255.
    pub injected: u8,
}

/// Ground truth of an injection run, in pick order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CorruptionRecord {
    pub entries: Vec<Corruption>,
}

impl CorruptionRecord {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|c| c.index)
    }
}

fn below(rng: &mut ChaCha20Rng, m: u64) -> u64 {
    let zone = (u64::MAX / m) * m;
    loop {
        let x = rng.next_u64();
        if x < zone {
            return x % m;
        }
    }
}

fn unit(rng: &mut ChaCha20Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Corrupts exactly `spec.corrupted_count(len)` distinct pixels.
pub fn inject_spn(img: &GrayImage, spec: &NoiseSpec) -> (GrayImage, CorruptionRecord) {
    let len = img.len();
    let n = spec.corrupted_count(len);
    let mut rng = ChaCha20Rng::seed_from_u64(spec.seed);

    let mut order: Vec<usize> = (0..len).collect();
    for i in 0..n {
        let j = i + below(&mut rng, (len - i) as u64) as usize;
        order.swap(i, j);
    }

    let mut noisy = img.clone();
    let pixels = noisy.pixels_mut();
    let entries = order[..n]
        .iter()
        .map(|&index| {
            let injected = if unit(&mut rng) < spec.salt_fraction {
                255
            } else {
                0
            };
            let original = pixels[index];
            pixels[index] = injected;
            Corruption {
                index,
                original,
                injected,
            }
        })
        .collect();
    (noisy, CorruptionRecord { entries })
}
