use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("image dimensions must be at least 1x1, got {width}x{height}")]
    EmptyImage { width: usize, height: usize },

    #[error("pixel buffer holds {actual} values but {width}x{height} needs {expected}")]
    BufferSize {
        width: usize,
        height: usize,
        expected: usize,
        actual: usize,
    },

    #[error("working intensity {value} at index {index} is outside [0, 255]")]
    IntensityRange { index: usize, value: f64 },

    #[error("pad radius {radius} must lie in 1..={max} for a {width}x{height} image")]
    PadRadius {
        radius: usize,
        max: usize,
        width: usize,
        height: usize,
    },

    #[error("window at ({row}, {col}) with radius {radius} does not fit pad radius {pad_radius} on a {width}x{height} image")]
    WindowOutOfRange {
        row: usize,
        col: usize,
        radius: usize,
        pad_radius: usize,
        width: usize,
        height: usize,
    },

    #[error("window has no regular entries")]
    EmptyWindow,

    #[error("non-finite value {value} at index {index} (corrupted filter state)")]
    NonFinite { index: usize, value: f64 },

    #[error("adaptive filters need an image of at least {min}x{min}, got {width}x{height}")]
    ImageTooSmall {
        width: usize,
        height: usize,
        min: usize,
    },

    #[error("invalid filter parameter: {0}")]
    FilterParam(String),

    #[error("image dimensions differ: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),

    #[error("SSIM window of {window}x{window} does not fit a {width}x{height} image")]
    SsimWindow {
        window: usize,
        width: usize,
        height: usize,
    },

    #[error("invalid noise spec: {0}")]
    NoiseSpec(String),

    #[error("cannot aggregate an empty set of reports")]
    EmptyAggregate,

    #[error("infinite PSNR cannot enter an aggregate (image {0})")]
    InfinitePsnr(String),

    #[error("unknown filter {0:?}; expected one of armf, damrmf, awmrmf, smf")]
    UnknownFilter(String),

    #[error("invalid sweep configuration: {0}")]
    SweepConfig(String),

    #[error("no corpus image could be processed")]
    CorpusFailed,

    #[error(transparent)]
    Pgm(#[from] PgmError),

    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Failures while decoding or encoding binary PGM (P5) files.
#[derive(Debug, Error)]
pub enum PgmError {
    #[error("not a binary PGM file (magic {0:?}, expected \"P5\")")]
    BadMagic(String),

    #[error("malformed PGM header: {0}")]
    MalformedHeader(String),

    #[error("unsupported PGM maxval {0}; only 255 is supported")]
    UnsupportedDepth(u32),

    #[error("truncated PGM payload: expected {expected} bytes, found {actual}")]
    Truncated { expected: usize, actual: usize },

    #[error("{0} already exists (pass force to overwrite)")]
    Exists(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}
