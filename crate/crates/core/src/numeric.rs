//! Scalar numerical kernels shared by the other modules: tolerant endpoint
//! comparison, bracketed bisection, Richardson extrapolation on geometric
//! ladders and adaptive Gauss–Kronrod quadrature for complex integrands.

use alloc::vec::Vec;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::{Error, Result};

/// Fixed tolerance for comparing floating endpoints.
pub const ENDPOINT_TOL: f64 = 1e-12;

/// Maximum bisection steps.
pub const BISECT_MAX_ITER: usize = 200;

/// Required final bracket width (relative to `max(1, |x|)`).
pub const BISECT_TOL: f64 = 1e-12;

/// Endpoint equality used for abutment detection.
#[inline]
pub fn same_point(x: f64, y: f64) -> bool {
    if x == y {
        return true;
    }
    if !x.is_finite() || !y.is_finite() {
        return false;
    }
    (x - y).abs() <= ENDPOINT_TOL * 1f64.max(x.abs()).max(y.abs())
}

/// Bisection for a sign change of `f` on `[lo, hi]`.
///
/// The bracket must be certified: `f(lo)` and `f(hi)` have opposite signs
/// (a zero at either end is returned directly). Iteration runs to full
/// floating precision, capped at [`BISECT_MAX_ITER`] steps.
pub fn bisect<F>(mut lo: f64, mut hi: f64, mut f: F) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    let flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.is_nan() || fhi.is_nan() || flo.signum() == fhi.signum() {
        return Err(Error::BisectionFailed { lo, hi });
    }
    let lo_negative = flo < 0.0;
    for _ in 0..BISECT_MAX_ITER {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return Ok(mid);
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if (fm < 0.0) == lo_negative {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mid = 0.5 * (lo + hi);
    if hi - lo <= BISECT_TOL * 1f64.max(mid.abs()) {
        Ok(mid)
    } else {
        Err(Error::BisectionFailed { lo, hi })
    }
}

/// Walks `start + dir * step * 2^k` for `k = 0, 1, ...` until `accept`
/// holds, returning the first accepted abscissa.
pub fn expand_until<F>(start: f64, dir: f64, step: f64, mut accept: F) -> Option<f64>
where
    F: FnMut(f64) -> bool,
{
    let mut s = step;
    for _ in 0..80 {
        let x = start + dir * s;
        if !x.is_finite() {
            return None;
        }
        if accept(x) {
            return Some(x);
        }
        s *= 2.0;
    }
    None
}

/// Tries `end + dir * offset * 2^{-k}` for `k = 0, 1, ...` until `accept`
/// holds. Certifies the sign of a function just inside a component boundary
/// where it diverges.
pub fn shrink_until<F>(end: f64, dir: f64, offset: f64, mut accept: F) -> Option<f64>
where
    F: FnMut(f64) -> bool,
{
    let mut s = offset;
    for _ in 0..120 {
        let x = end + dir * s;
        if x == end {
            return None;
        }
        if accept(x) {
            return Some(x);
        }
        s *= 0.5;
    }
    None
}

/// Result of extrapolating a sequence of estimates to step zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extrapolated {
    pub value: f64,
    /// Difference between the two best consecutive estimates.
    pub spread: f64,
}

/// Richardson extrapolation of estimates `values[k] = E(h0 / ratio^k)`,
/// assuming `E(h) = E(0) + c1 h + c2 h² + ...`.
///
/// The full table is built and the column whose last two entries agree best
/// supplies the estimate.
pub fn richardson(values: &[f64], ratio: f64) -> Result<Extrapolated> {
    let n = values.len();
    if n < 2 {
        return Err(Error::InvalidInput("ladder needs at least two values".into()));
    }
    let mut table: Vec<Vec<f64>> = Vec::with_capacity(n);
    for (k, &v) in values.iter().enumerate() {
        let mut row = Vec::with_capacity(k + 1);
        row.push(v);
        let mut pow = 1.0;
        for j in 1..=k {
            pow *= ratio;
            let prev = row[j - 1];
            let above = table[k - 1][j - 1];
            row.push(prev + (prev - above) / (pow - 1.0));
        }
        table.push(row);
    }
    let last = &table[n - 1];
    let before = &table[n - 2];
    let mut best: Option<Extrapolated> = None;
    for j in 0..before.len() {
        let spread = (last[j] - before[j]).abs();
        if !spread.is_finite() {
            continue;
        }
        if best.is_none_or(|b| spread < b.spread) {
            best = Some(Extrapolated { value: last[j], spread });
        }
    }
    best.ok_or(Error::NonConvergence("richardson extrapolation"))
}

/// Default ε-ladder: `10^{-1}, ..., 10^{-6}`.
pub fn default_eps_ladder() -> Vec<f64> {
    let mut v = Vec::with_capacity(6);
    let mut e = 1.0;
    for _ in 0..6 {
        e /= 10.0;
        v.push(e);
    }
    v
}

/// Extrapolates `sample(ε)` to `ε ↓ 0` along a geometric ladder.
pub fn extrapolate_to_zero<F>(ladder: &[f64], mut sample: F, rel_tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    if ladder.len() < 2 {
        return Err(Error::InvalidInput("ladder needs at least two steps".into()));
    }
    let ratio = ladder[0] / ladder[1];
    for w in ladder.windows(2) {
        if !((w[0] / w[1]) - ratio).abs().le(&(1e-9 * ratio)) || w[1] <= 0.0 {
            return Err(Error::InvalidInput("ladder must be geometric and positive".into()));
        }
    }
    let values: Vec<f64> = ladder.iter().map(|&e| sample(e)).collect();
    let ex = richardson(&values, ratio)?;
    if ex.spread <= rel_tol * 1f64.max(ex.value.abs()) {
        Ok(ex.value)
    } else {
        Err(Error::NonConvergence("ε-ladder extrapolation"))
    }
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15<F>(f: &F, a: f64, b: f64) -> (Complex64, f64)
where
    F: Fn(f64) -> Complex64,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let s = f(center - dx) + f(center + dx);
        kronrod += s * WGK[j];
        if j % 2 == 1 {
            gauss += s * WG[j / 2];
        }
    }
    let est = kronrod * half;
    let err = ((kronrod - gauss) * half).norm();
    (est, err)
}

/// Adaptive Gauss–Kronrod (7/15) quadrature of a complex integrand over
/// `[a, b]`. Returns the integral and the accumulated error estimate.
pub fn integrate<F>(f: F, a: f64, b: f64, abs_tol: f64, rel_tol: f64) -> Result<(Complex64, f64)>
where
    F: Fn(f64) -> Complex64,
{
    const MAX_SEGMENTS: usize = 4000;
    if a == b {
        return Ok((Complex64::new(0.0, 0.0), 0.0));
    }
    let (v, e) = gk15(&f, a, b);
    let mut segs: Vec<(f64, f64, Complex64, f64)> = alloc::vec![(a, b, v, e)];
    loop {
        let total: Complex64 = segs.iter().map(|s| s.2).sum();
        let err: f64 = segs.iter().map(|s| s.3).sum();
        if err <= abs_tol.max(rel_tol * total.norm()) {
            return Ok((total, err));
        }
        if segs.len() >= MAX_SEGMENTS {
            return Err(Error::QuadratureFailed { estimate_error: err });
        }
        let (idx, _) = segs
            .iter()
            .enumerate()
            .fold((0, -1.0), |acc, (i, s)| if s.3 > acc.1 { (i, s.3) } else { acc });
        let (lo, hi, _, _) = segs.swap_remove(idx);
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return Err(Error::QuadratureFailed { estimate_error: err });
        }
        let (v1, e1) = gk15(&f, lo, mid);
        let (v2, e2) = gk15(&f, mid, hi);
        segs.push((lo, mid, v1, e1));
        segs.push((mid, hi, v2, e2));
    }
}
