//! Salt-and-pepper denoising with adaptive Riesz-mean filters.
//!
//! The crate provides the three adaptive filters (ARmF, DAMRmF and AWMRmF), a
//! median baseline, seeded noise injection, MSE/PSNR/SSIM, binary PGM I/O
//! and a density-sweep harness.
//!
//! ```
//! use riesz_denoise::{awmrmf, inject_spn, psnr, GrayImage, NoiseSpec};
//!
//! let clean = GrayImage::new(16, 16, (0..256).map(|i| 40 + (i % 16) as u8 * 8).collect())?;
//! let (noisy, _) = inject_spn(&clean, &NoiseSpec::new(0.6, 7)?);
//! let restored = awmrmf(&noisy)?;
//! assert!(psnr(&clean, &restored)? > psnr(&clean, &noisy)?);
//! # Ok::<(), riesz_denoise::Error>(())
//! ```

pub mod error;
pub mod filters;
pub mod image;
pub mod kernels;
pub mod metrics;
pub mod noise;
pub mod pgm;
pub mod sweep;

pub use error::{Error, PgmError, Result};
pub use filters::{
    armf, awmrmf, damrmf, denoise, denoise_with, smf_baseline, AdaptiveFilter, Denoised,
    FilterKind, FilterParams,
};
pub use image::{
    classify_entry, noise_mask, sym_pad, to_double, to_uint8, window, EntryClass, GrayImage, Image,
    NoiseMask, PaddedImage, Window, WorkingImage,
};
pub use kernels::{
    modified_pixel_weight, modified_riesz_mean, pixel_similarity, pixel_weight, riesz_mean,
    weight_modified_riesz_mean, window_median, Kernel, KernelWeights,
};
pub use metrics::{aggregate, mse, psnr, ssim, QualityReport, SsimMode, SsimParams};
pub use noise::{inject_spn, CorruptionRecord, NoiseSpec};
pub use pgm::{read_pgm, write_pgm};
