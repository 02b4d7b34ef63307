//! Density sweeps over an image corpus, written as CSV.
//!
//! For every image (lexicographic file order), filter (declared order),
//! density (ascending) and seed, the clean image is corrupted, denoised and
//! scored. After the data rows come one mean row per (filter, density) and a
//! grand-mean row per filter, which is the mean of that filter's density
//! means.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::filters::{denoise_with, FilterKind, FilterParams};
use crate::image::GrayImage;
use crate::metrics::{aggregate, QualityReport, SsimParams};
use crate::noise::{inject_spn, NoiseSpec};
use crate::pgm::read_pgm;

pub const CSV_HEADER: &str = "image,filter,density,seed,psnr_db,ssim,mse,seconds";

/// Label used in the image and seed columns of aggregate rows.
pub const MEAN_LABEL: &str = "mean";
pub const ALL_LABEL: &str = "all";

/// Densities 0.60, 0.65, …, 0.95.
pub fn default_densities() -> Vec<f64> {
    (0..8).map(|i| f64::from(60 + 5 * i) / 100.0).collect()
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub filters: Vec<FilterKind>,
    pub densities: Vec<f64>,
    pub seeds: Vec<u64>,
    pub ssim: SsimParams,
    pub params: FilterParams,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            filters: FilterKind::ADAPTIVE.to_vec(),
            densities: default_densities(),
            seeds: vec![0],
            ssim: SsimParams::default(),
            params: FilterParams::default(),
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.filters.is_empty() {
            return Err(Error::SweepConfig("no filters selected".into()));
        }
        if self.densities.is_empty() {
            return Err(Error::SweepConfig("no densities selected".into()));
        }
        if let Some(d) = self.densities.iter().find(|d| !(**d > 0.0 && **d < 1.0)) {
            return Err(Error::SweepConfig(format!("density {d} outside (0, 1)")));
        }
        if self.seeds.is_empty() {
            return Err(Error::SweepConfig("no seeds selected".into()));
        }
        Ok(())
    }

    fn sorted_densities(&self) -> Vec<f64> {
        let mut d = self.densities.clone();
        d.sort_by(f64::total_cmp);
        d.dedup();
        d
    }
}

/// One (image, filter, density, seed) measurement.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub image: String,
    pub filter: FilterKind,
    pub density: f64,
    pub seed: u64,
    pub report: QualityReport,
}

/// Mean over images and seeds; `density: None` marks a filter's grand mean.
#[derive(Clone, Debug, PartialEq)]
pub struct MeanRow {
    pub filter: FilterKind,
    pub density: Option<f64>,
    pub report: QualityReport,
}

#[derive(Clone, Debug, Default)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
    pub means: Vec<MeanRow>,
}

impl SweepResult {
    pub fn mean(&self, filter: FilterKind, density: f64) -> Option<&QualityReport> {
        self.means
            .iter()
            .find(|m| m.filter == filter && m.density == Some(density))
            .map(|m| &m.report)
    }

    pub fn grand_mean(&self, filter: FilterKind) -> Option<&QualityReport> {
        self.means
            .iter()
            .find(|m| m.filter == filter && m.density.is_none())
            .map(|m| &m.report)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            push_row(
                &mut out,
                &r.image,
                r.filter,
                &format_density(r.density),
                &r.seed.to_string(),
                &r.report,
            );
        }
        for m in &self.means {
            let density = m
                .density
                .map_or_else(|| ALL_LABEL.to_owned(), format_density);
            push_row(
                &mut out, MEAN_LABEL, m.filter, &density, ALL_LABEL, &m.report,
            );
        }
        out
    }

    pub fn write_csv(&self, path: impl AsRef<Path>) -> io::Result<()> {
        let mut f = io::BufWriter::new(fs::File::create(path)?);
        f.write_all(self.to_csv().as_bytes())?;
        f.flush()
    }
}

fn push_row(
    out: &mut String,
    image: &str,
    filter: FilterKind,
    density: &str,
    seed: &str,
    r: &QualityReport,
) {
    let _ = writeln!(
        out,
        "{},{},{},{},{},{:.6},{:.4},{:.6}",
        csv_field(image),
        filter,
        density,
        seed,
        format_psnr(r.psnr),
        r.ssim,
        r.mse,
        r.seconds
    );
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

/// `0.90` for whole percentages, full precision otherwise.
pub fn format_density(d: f64) -> String {
    let pct = d * 100.0;
    if (pct - pct.round()).abs() < 1e-9 {
        format!("{d:.2}")
    } else {
        format!("{d}")
    }
}

pub fn format_psnr(p: f64) -> String {
    if p == f64::INFINITY {
        "inf".to_owned()
    } else {
        format!("{p:.4}")
    }
}

/// A loaded corpus plus the files that failed to load.
#[derive(Debug, Default)]
pub struct Corpus {
    pub images: Vec<(String, GrayImage)>,
    pub failures: Vec<(PathBuf, Error)>,
}

/// Loads every `*.pgm` in `dir`, sorted by file name.
pub fn load_corpus(dir: impl AsRef<Path>) -> Result<Corpus> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|e| e.eq_ignore_ascii_case("pgm")))
        .collect();
    paths.sort();
    let mut corpus = Corpus::default();
    for p in paths {
        let id = p
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        match read_pgm(&p) {
            Ok(img) => corpus.images.push((id, img)),
            Err(e) => corpus.failures.push((p, e.into())),
        }
    }
    Ok(corpus)
}

/// Runs the sweep over in-memory images. Images that fail (e.g. too small for
/// the adaptive filters) are skipped and reported; if none succeeds the sweep
/// fails.
pub fn run_sweep(
    images: &[(String, GrayImage)],
    config: &SweepConfig,
) -> Result<(SweepResult, Vec<(String, Error)>)> {
    config.validate()?;
    let densities = config.sorted_densities();
    let mut rows = Vec::new();
    let mut failures = Vec::new();

    for (id, clean) in images {
        match sweep_image(id, clean, config, &densities) {
            Ok(mut r) => rows.append(&mut r),
            Err(e) => failures.push((id.clone(), e)),
        }
    }
    if rows.is_empty() {
        return Err(Error::CorpusFailed);
    }

    let mut means = Vec::new();
    for &filter in &config.filters {
        let mut cells = Vec::with_capacity(densities.len());
        for &density in &densities {
            let reports: Vec<QualityReport> = rows
                .iter()
                .filter(|r| r.filter == filter && r.density == density)
                .map(|r| r.report)
                .collect();
            let mean = aggregate(&reports).map_err(|e| match e {
                Error::InfinitePsnr(_) => {
                    Error::InfinitePsnr(format!("{filter} at density {}", format_density(density)))
                }
                e => e,
            })?;
            cells.push(mean);
            means.push(MeanRow {
                filter,
                density: Some(density),
                report: mean,
            });
        }
        means.push(MeanRow {
            filter,
            density: None,
            report: aggregate(&cells)?,
        });
    }
    Ok((SweepResult { rows, means }, failures))
}

fn sweep_image(
    id: &str,
    clean: &GrayImage,
    config: &SweepConfig,
    densities: &[f64],
) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::new();
    for &filter in &config.filters {
        for &density in densities {
            for &seed in &config.seeds {
                let (noisy, _) = inject_spn(clean, &NoiseSpec::new(density, seed)?);
                let out = denoise_with(&noisy, filter, &config.params)?;
                let report = QualityReport::measure(clean, &out.image, out.seconds, &config.ssim)?;
                rows.push(SweepRow {
                    image: id.to_owned(),
                    filter,
                    density,
                    seed,
                    report,
                });
            }
        }
    }
    Ok(rows)
}
