//! Deterministic sample grids used by the certification routines.

use alloc::vec::Vec;
use num_complex::Complex64;

use crate::nevanlinna::ClosedSet;

/// Radical inverse of `i` in base `b`, in `[0, 1)`.
pub fn halton(mut i: u64, b: u64) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    let inv = 1.0 / b as f64;
    while i > 0 {
        f *= inv;
        r += f * (i % b) as f64;
        i /= b;
    }
    r
}

/// `n` quasi-random points of the box `[re_lo, re_hi] × (0, im_hi]`.
pub fn halton_box(n: usize, re_lo: f64, re_hi: f64, im_hi: f64) -> Vec<Complex64> {
    (1..=n as u64)
        .map(|i| Complex64::new(re_lo + (re_hi - re_lo) * halton(i, 2), im_hi * (1.0 - halton(i, 3))))
        .collect()
}

/// Height of the near-boundary rows.
pub const NEAR_AXIS: f64 = 1e-4;

/// `near` points at height [`NEAR_AXIS`] spread over the finite part of
/// `σ` (widened by `1/2` on each side), or over `[−10, 10]` when it is empty.
pub fn near_support(sigma: &ClosedSet, near: usize) -> Vec<Complex64> {
    let blocks: Vec<(f64, f64)> = sigma
        .blocks()
        .into_iter()
        .map(|(l, h)| ((l - 0.5).max(-10.5), (h + 0.5).min(10.5)))
        .filter(|(l, h)| l < h)
        .collect();
    let spans = if blocks.is_empty() { alloc::vec![(-10.0, 10.0)] } else { blocks };
    let total: f64 = spans.iter().map(|s| s.1 - s.0).sum();
    (1..=near as u64)
        .map(|i| {
            let mut u = halton(i, 2) * total;
            for &(l, h) in &spans {
                if u <= h - l {
                    return Complex64::new(l + u, NEAR_AXIS);
                }
                u -= h - l;
            }
            Complex64::new(spans[spans.len() - 1].1, NEAR_AXIS)
        })
        .collect()
}

/// The standard grid: `10³` points of `[−10, 10] × (0, 10]` and `10²`
/// points just above `σ`.
pub fn certification_grid(sigma: &ClosedSet) -> Vec<Complex64> {
    let mut g = halton_box(1000, -10.0, 10.0, 10.0);
    g.extend(near_support(sigma, 100));
    g
}
