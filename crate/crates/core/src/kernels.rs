//! Window weight functions and the weighted means built on them.
//!
//! All three weights decay with the distance of a cell from the window center
//! `(k, k)` and equal 1 at the center.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::image::Window;

/// Inverse-squared Manhattan distance weight (pixel similarity).
pub fn pixel_similarity(row: usize, col: usize, k: usize) -> f64 {
    let d = k.abs_diff(row) + k.abs_diff(col);
    let r = 1.0 / (1.0 + d as f64);
    r * r
}

/// Inverse-squared weight over the squared Euclidean distance (pixel weight).
pub fn pixel_weight(row: usize, col: usize, k: usize) -> f64 {
    let dr = k.abs_diff(row) as f64;
    let dc = k.abs_diff(col) as f64;
    let r = 1.0 / (1.0 + dr * dr + dc * dc);
    r * r
}

/// Pixel weight with the squared distances scaled by `4^(k+1)`.
pub fn modified_pixel_weight(row: usize, col: usize, k: usize) -> f64 {
    let scale = 4f64.powi(k as i32 + 1);
    let dr = k.abs_diff(row) as f64;
    let dc = k.abs_diff(col) as f64;
    let r = 1.0 / (1.0 + scale * (dr * dr) + scale * (dc * dc));
    r * r
}

/// The weight family used by a windowed mean.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kernel {
    /// Riesz mean weights.
    Similarity,
    /// Modified Riesz mean weights.
    PixelWeight,
    /// Weight-modified Riesz mean weights.
    ModifiedPixelWeight,
}

impl Kernel {
    pub const ALL: [Kernel; 3] = [
        Kernel::Similarity,
        Kernel::PixelWeight,
        Kernel::ModifiedPixelWeight,
    ];

    #[inline]
    pub fn weight(self, row: usize, col: usize, k: usize) -> f64 {
        match self {
            Kernel::Similarity => pixel_similarity(row, col, k),
            Kernel::PixelWeight => pixel_weight(row, col, k),
            Kernel::ModifiedPixelWeight => modified_pixel_weight(row, col, k),
        }
    }

    fn index(self) -> usize {
        match self {
            Kernel::Similarity => 0,
            Kernel::PixelWeight => 1,
            Kernel::ModifiedPixelWeight => 2,
        }
    }
}

/// A full (2k+1)×(2k+1) table of one kernel's weights, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelWeights {
    kernel: Kernel,
    radius: usize,
    weights: Vec<f64>,
}

impl KernelWeights {
    pub fn new(kernel: Kernel, radius: usize) -> Self {
        let side = 2 * radius + 1;
        let weights = (0..side * side)
            .map(|i| kernel.weight(i / side, i % side, radius))
            .collect();
        Self {
            kernel,
            radius,
            weights,
        }
    }

    pub fn kernel(&self) -> Kernel {
        self.kernel
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn side(&self) -> usize {
        2 * self.radius + 1
    }

    #[inline]
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.weights[row * self.side() + col]
    }
}

/// Largest radius kept in the shared weight cache.
pub const MAX_CACHED_RADIUS: usize = 16;

fn cache() -> &'static [Vec<KernelWeights>; 3] {
    static CACHE: OnceLock<[Vec<KernelWeights>; 3]> = OnceLock::new();
    CACHE.get_or_init(|| {
        Kernel::ALL.map(|kernel| {
            (1..=MAX_CACHED_RADIUS)
                .map(|k| KernelWeights::new(kernel, k))
                .collect()
        })
    })
}

/// Shared weight table for `1 <= radius <= MAX_CACHED_RADIUS`.
pub fn cached_weights(kernel: Kernel, radius: usize) -> Option<&'static KernelWeights> {
    if radius == 0 || radius > MAX_CACHED_RADIUS {
        return None;
    }
    Some(&cache()[kernel.index()][radius - 1])
}

/// Weighted mean of the regular cells.
///
/// `cells` yields `(value, is_regular)` parallel to `weights`. Sums run
/// in row-major order; the result is clamped into the range of the regular
/// entries so rounding can never push it outside.
#[inline]
pub(crate) fn weighted_mean_raw(
    cells: impl Iterator<Item = (f64, bool)>,
    weights: &[f64],
) -> Option<f64> {
    let mut num = 0.0;
    let mut den = 0.0;
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for ((v, regular), &w) in cells.zip(weights) {
        if regular {
            num += w * v;
            den += w;
            lo = lo.min(v);
            hi = hi.max(v);
        }
    }
    if hi < lo {
        None
    } else {
        Some((num / den).clamp(lo, hi))
    }
}

/// Weighted mean of a window's regular entries under `kernel`.
pub fn kernel_mean(w: &Window, kernel: Kernel) -> Result<f64> {
    let owned;
    let table = match cached_weights(kernel, w.radius()) {
        Some(t) => t,
        None => {
            owned = KernelWeights::new(kernel, w.radius());
            &owned
        }
    };
    let side = w.side();
    let cells = (0..side * side).map(|i| (w.entries()[i], w.is_regular(i / side, i % side)));
    weighted_mean_raw(cells, table.weights()).ok_or(Error::EmptyWindow)
}

/// Riesz mean: pixel-similarity-weighted mean of the regular entries.
pub fn riesz_mean(w: &Window) -> Result<f64> {
    kernel_mean(w, Kernel::Similarity)
}

/// Modified Riesz mean: pixel-weight-weighted mean of the regular entries.
pub fn modified_riesz_mean(w: &Window) -> Result<f64> {
    kernel_mean(w, Kernel::PixelWeight)
}

/// Weight-modified Riesz mean: modified-pixel-weight mean of the regular entries.
pub fn weight_modified_riesz_mean(w: &Window) -> Result<f64> {
    kernel_mean(w, Kernel::ModifiedPixelWeight)
}

/// Median of all (2k+1)² entries, noisy ones included.
pub fn window_median(w: &Window) -> f64 {
    let mut v = w.entries().to_vec();
    median_in_place(&mut v)
}

/// Median of an odd-length buffer; reorders the buffer.
#[inline]
pub(crate) fn median_in_place(v: &mut [f64]) -> f64 {
    debug_assert!(v.len() % 2 == 1);
    let mid = v.len() / 2;
    let (_, m, _) = v.select_nth_unstable_by(mid, f64::total_cmp);
    *m
}

#[cfg(test)]
mod tests {
    use super::*;

    // Spec cells are 1-based (s, t); here they are (s-1, t-1).

    #[test]
    fn similarity_values() {
        assert_eq!(pixel_similarity(1, 1, 1), 1.0);
        assert_eq!(pixel_similarity(0, 1, 1), 0.25);
        assert!((pixel_similarity(0, 0, 1) - 1.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn pixel_weight_values() {
        assert_eq!(pixel_weight(2, 2, 2), 1.0);
        assert!((pixel_weight(0, 0, 1) - 1.0 / 9.0).abs() < 1e-15);
        assert!((pixel_weight(0, 2, 2) - 0.04).abs() < 1e-15);
    }

    #[test]
    fn modified_weight_values() {
        assert_eq!(modified_pixel_weight(3, 3, 3), 1.0);
        assert!((modified_pixel_weight(1, 0, 1) - 1.0 / 289.0).abs() < 1e-15);
        assert!((modified_pixel_weight(0, 0, 1) - 1.0 / 1089.0).abs() < 1e-15);
    }

    #[test]
    fn tables_are_symmetric_and_peaked() {
        for kernel in Kernel::ALL {
            for k in 1..=6 {
                let t = KernelWeights::new(kernel, k);
                let n = t.side();
                for r in 0..n {
                    for c in 0..n {
                        let w = t.get(r, c);
                        assert!(w > 0.0 && w <= 1.0);
                        assert_eq!(w, t.get(n - 1 - r, c));
                        assert_eq!(w, t.get(r, n - 1 - c));
                        assert_eq!(w, t.get(c, r));
                        if (r, c) != (k, k) {
                            assert!(w < 1.0);
                        }
                    }
                }
                assert_eq!(t.get(k, k), 1.0);
            }
        }
    }

    #[test]
    fn modified_decays_faster() {
        for k in 1..=6 {
            let n = 2 * k + 1;
            for r in 0..n {
                for c in 0..n {
                    if (r, c) != (k, k) {
                        assert!(modified_pixel_weight(r, c, k) < pixel_weight(r, c, k));
                    }
                }
            }
        }
    }

    #[test]
    fn cache_matches_fresh_tables() {
        assert!(cached_weights(Kernel::Similarity, 0).is_none());
        assert!(cached_weights(Kernel::Similarity, MAX_CACHED_RADIUS + 1).is_none());
        let c = cached_weights(Kernel::ModifiedPixelWeight, 4).unwrap();
        assert_eq!(c, &KernelWeights::new(Kernel::ModifiedPixelWeight, 4));
    }

    fn window_k1(cells: &[((usize, usize), f64)]) -> Window {
        let mut e = vec![0.0; 9];
        for &((r, c), v) in cells {
            e[r * 3 + c] = v;
        }
        Window::from_entries(1, e).unwrap()
    }

    #[test]
    fn riesz_mean_examples() {
        let w = window_k1(&[
            ((0, 1), 100.0),
            ((1, 0), 50.0),
            ((1, 2), 150.0),
            ((2, 1), 200.0),
        ]);
        assert!((riesz_mean(&w).unwrap() - 125.0).abs() < 1e-12);
        let w = window_k1(&[((0, 0), 40.0), ((0, 1), 100.0)]);
        assert!((riesz_mean(&w).unwrap() - 1060.0 / 13.0).abs() < 1e-12);
        let w = Window::from_entries(2, vec![77.0; 25]).unwrap();
        assert_eq!(riesz_mean(&w).unwrap(), 77.0);
    }

    #[test]
    fn modified_riesz_mean_examples() {
        let w = window_k1(&[
            ((0, 1), 100.0),
            ((1, 0), 50.0),
            ((1, 2), 150.0),
            ((2, 1), 200.0),
        ]);
        assert!((modified_riesz_mean(&w).unwrap() - 125.0).abs() < 1e-12);
        let w = window_k1(&[((0, 0), 40.0), ((0, 1), 100.0)]);
        assert!((modified_riesz_mean(&w).unwrap() - 1060.0 / 13.0).abs() < 1e-12);
        let w = Window::from_entries(1, vec![3.0; 9]).unwrap();
        assert_eq!(modified_riesz_mean(&w).unwrap(), 3.0);
    }

    #[test]
    fn weight_modified_riesz_mean_examples() {
        let w = window_k1(&[
            ((0, 1), 100.0),
            ((1, 0), 50.0),
            ((1, 2), 150.0),
            ((2, 1), 200.0),
        ]);
        assert!((weight_modified_riesz_mean(&w).unwrap() - 125.0).abs() < 1e-12);
        let w = window_k1(&[((0, 0), 80.0), ((0, 1), 120.0)]);
        assert!((weight_modified_riesz_mean(&w).unwrap() - 153800.0 / 1378.0).abs() < 1e-9);
        let w = Window::from_entries(3, vec![201.0; 49]).unwrap();
        assert_eq!(weight_modified_riesz_mean(&w).unwrap(), 201.0);
    }

    #[test]
    fn empty_window_is_an_error() {
        let w = Window::from_entries(1, vec![0.0, 255.0, 0.0, 0.0, 255.0, 0.0, 0.0, 0.0, 255.0])
            .unwrap();
        assert!(w.is_null());
        for kernel in Kernel::ALL {
            assert!(matches!(kernel_mean(&w, kernel), Err(Error::EmptyWindow)));
        }
    }

    #[test]
    fn median_examples() {
        let w = Window::from_entries(
            1,
            vec![0.0, 85.0, 76.0, 35.0, 255.0, 255.0, 0.0, 150.0, 73.0],
        )
        .unwrap();
        assert_eq!(window_median(&w), 76.0);
        assert_eq!(
            window_median(&Window::from_entries(1, vec![255.0; 9]).unwrap()),
            255.0
        );
        assert_eq!(
            window_median(&Window::from_entries(2, vec![9.0; 25]).unwrap()),
            9.0
        );
    }
}
