//! Test-only oracles: definition-literal means and a sequential reference
//! filter built from the public padding/window API.
#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use riesz_denoise::{sym_pad, window, FilterKind, GrayImage, Window, WorkingImage};

pub fn data_path(name: &str) -> String {
    format!("{}/../../data/{name}", env!("CARGO_MANIFEST_DIR"))
}

pub fn is_noisy(v: f64) -> bool {
    v == 0.0 || v == 255.0
}

/// Weight of 1-based cell (s, t) in a radius-k window, written straight from
/// the definitions (center at k+1).
pub fn naive_weight(kind: FilterKind, s: usize, t: usize, k: usize) -> f64 {
    let c = (k + 1) as f64;
    let (ds, dt) = (s as f64 - c, t as f64 - c);
    match kind {
        FilterKind::Armf => (1.0 / (1.0 + ds.abs() + dt.abs())).powi(2),
        FilterKind::Damrmf => (1.0 / (1.0 + ds * ds + dt * dt)).powi(2),
        FilterKind::Awmrmf => {
            let f = 4f64.powi(k as i32 + 1);
            (1.0 / (1.0 + f * ds * ds + f * dt * dt)).powi(2)
        }
        FilterKind::Smf => unreachable!(),
    }
}

/// Weighted mean of the regular entries, summed row-major over 1-based
/// cells, clamped into the regular range. `None` for an empty regular set.
pub fn naive_mean(w: &Window, kind: FilterKind) -> Option<f64> {
    let k = w.radius();
    let side = 2 * k + 1;
    let (mut num, mut den) = (0.0, 0.0);
    let mut regular = Vec::new();
    for s in 1..=side {
        for t in 1..=side {
            let a = w.entry(s - 1, t - 1);
            if !is_noisy(a) {
                let p = naive_weight(kind, s, t, k);
                num += p * a;
                den += p;
                regular.push(a);
            }
        }
    }
    if regular.is_empty() {
        return None;
    }
    let lo = regular.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = regular.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Some((num / den).clamp(lo, hi))
}

/// Unclamped direct formula, for checking that clamping is only cosmetic.
pub fn naive_mean_unclamped(w: &Window, kind: FilterKind) -> Option<f64> {
    let k = w.radius();
    let side = 2 * k + 1;
    let (mut num, mut den) = (0.0, 0.0);
    for s in 1..=side {
        for t in 1..=side {
            let a = w.entry(s - 1, t - 1);
            if !is_noisy(a) {
                let p = naive_weight(kind, s, t, k);
                num += p * a;
                den += p;
            }
        }
    }
    (den > 0.0).then(|| num / den)
}

/// Sort-based median of all entries.
pub fn naive_median(w: &Window) -> f64 {
    let mut v = w.entries().to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v[v.len() / 2]
}

pub fn reference_t_start(kind: FilterKind) -> usize {
    match kind {
        FilterKind::Awmrmf => 6,
        _ => 5,
    }
}

/// One pass read entirely from the pass-start image, pixel by pixel in
/// raster order, growing k = 1..t exactly as the pseudo-code does.
pub fn reference_pass(
    kind: FilterKind,
    a: &[f64],
    width: usize,
    height: usize,
    t: usize,
) -> Vec<f64> {
    let img = WorkingImage::new(width, height, a.to_vec()).unwrap();
    let pad = sym_pad(&img, t).unwrap();
    let mut out = a.to_vec();
    for i in 0..height {
        for j in 0..width {
            if !is_noisy(a[i * width + j]) {
                continue;
            }
            for k in 1..=t {
                let w = window(&pad, i, j, k).unwrap();
                match kind {
                    FilterKind::Armf => {
                        if let Some(m) = naive_mean(&w, kind) {
                            out[i * width + j] = m;
                            break;
                        }
                    }
                    FilterKind::Damrmf => {
                        let med = naive_median(&w);
                        if 0.0 < med && med < 255.0 && is_noisy(a[i * width + j]) {
                            out[i * width + j] = naive_mean(&w, kind).unwrap();
                            break;
                        }
                    }
                    FilterKind::Awmrmf => {
                        // gate on the pass-start value; no break
                        if is_noisy(a[i * width + j]) {
                            if let Some(m) = naive_mean(&w, kind) {
                                out[i * width + j] = m;
                            }
                        }
                    }
                    FilterKind::Smf => unreachable!(),
                }
            }
        }
    }
    out
}

/// Full reference filter. Requires min(width, height) >= t_start so the
/// checked `sym_pad` accepts every pass.
pub fn reference_filter(kind: FilterKind, img: &GrayImage) -> GrayImage {
    let (w, h) = (img.width(), img.height());
    let mut a: Vec<f64> = img.pixels().iter().map(|&v| f64::from(v)).collect();
    for t in (1..=reference_t_start(kind)).rev() {
        a = reference_pass(kind, &a, w, h, t);
    }
    let px = a
        .iter()
        .map(|v| v.round().clamp(0.0, 255.0) as u8)
        .collect();
    GrayImage::new(w, h, px).unwrap()
}

/// Uniform random clean image in [1, 254], then corrupt `density` of the
/// pixels independently with 0/255.
pub fn random_noisy(rng: &mut StdRng, width: usize, height: usize, density: f64) -> GrayImage {
    let px = (0..width * height)
        .map(|_| {
            if rng.random_bool(density) {
                if rng.random_bool(0.5) {
                    255
                } else {
                    0
                }
            } else {
                rng.random_range(1..=254)
            }
        })
        .collect();
    GrayImage::new(width, height, px).unwrap()
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}
