//! Recovery of representation data from an evaluator on ℂ⁺.

use core::f64::consts::PI;

use alloc::vec::Vec;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::numeric::{extrapolate_to_zero, richardson};
use crate::{Error, Result};

/// Exponents `k` of the `y = 2^k` ladder used by [`recover_alpha`].
pub const ALPHA_LADDER: core::ops::Range<i32> = 3..13;

/// `α = lim_{y→∞} f(iy)/(iy)`, estimated as `Im f(iy)/y` on `y = 2^k`
/// and extrapolated in `1/y`.
pub fn recover_alpha<F>(f: F, rel_tol: f64) -> Result<f64>
where
    F: Fn(Complex64) -> Complex64,
{
    let values: Vec<f64> = ALPHA_LADDER
        .map(|k| {
            let y = 2f64.powi(k);
            f(Complex64::new(0.0, y)).im / y
        })
        .collect();
    let ex = richardson(&values, 2.0)?;
    if ex.spread > rel_tol * 1f64.max(ex.value.abs()) {
        return Err(Error::NonConvergence("alpha extrapolation"));
    }
    if ex.value < -rel_tol {
        return Err(Error::Certification("negative linear coefficient".into()));
    }
    Ok(ex.value.max(0.0))
}

/// `β = Re f(i)`: the kernel equals `i` at `z = i`.
pub fn recover_beta<F>(f: F) -> f64
where
    F: Fn(Complex64) -> Complex64,
{
    f(Complex64::new(0.0, 1.0)).re
}

/// `Im f(t + iε) / (π(1 + t²))`.
pub fn stieltjes_density<F>(f: F, t: f64, eps: f64) -> f64
where
    F: Fn(Complex64) -> Complex64,
{
    f(Complex64::new(t, eps)).im / (PI * (1.0 + t * t))
}

/// Density of the absolutely continuous part at `t`, extrapolated along
/// the ε-ladder.
pub fn stieltjes_density_limit<F>(f: F, t: f64, ladder: &[f64], rel_tol: f64) -> Result<f64>
where
    F: Fn(Complex64) -> Complex64,
{
    extrapolate_to_zero(ladder, |e| stieltjes_density(&f, t, e), rel_tol)
}

/// Mass of an isolated atom at `t0`: `lim ε Im f(t0 + iε)/(1 + t0²)`.
pub fn recover_atom<F>(f: F, t0: f64, ladder: &[f64], rel_tol: f64) -> Result<f64>
where
    F: Fn(Complex64) -> Complex64,
{
    let w = extrapolate_to_zero(ladder, |e| e * f(Complex64::new(t0, e)).im / (1.0 + t0 * t0), rel_tol)?;
    Ok(if w.abs() <= rel_tol { 0.0 } else { w })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nevanlinna::{z_plus_i, z_plus_sqrt, Measure, NevanlinnaRep};
    use crate::numeric::default_eps_ladder;

    fn minus_inv(z: Complex64) -> Complex64 {
        -z.inv()
    }

    #[test]
    fn alpha_examples() {
        assert!((recover_alpha(z_plus_i, 1e-9).unwrap() - 1.0).abs() < 1e-9);
        assert!(recover_alpha(minus_inv, 1e-9).unwrap().abs() < 1e-9);
        assert!((recover_alpha(z_plus_sqrt, 1e-9).unwrap() - 2.0).abs() < 1e-8);
    }

    #[test]
    fn beta_examples() {
        assert_eq!(recover_beta(z_plus_i), 0.0);
        assert_eq!(recover_beta(|z| z + 5.0), 5.0);
        assert_eq!(recover_beta(minus_inv), 0.0);
    }

    #[test]
    fn density_examples() {
        let ladder = default_eps_ladder();
        for t in [-3.0, 0.0, 0.4, 2.0] {
            let d = stieltjes_density_limit(z_plus_i, t, &ladder, 1e-9).unwrap();
            assert!((d - 1.0 / (PI * (1.0 + t * t))).abs() < 1e-12);
            assert!(stieltjes_density_limit(|z| z, t, &ladder, 1e-9).unwrap().abs() < 1e-12);
        }
        for t in [-0.8, -0.2, 0.5] {
            let d = stieltjes_density_limit(z_plus_sqrt, t, &ladder, 1e-6).unwrap();
            let want = (1.0 - t * t).sqrt() / (PI * (1.0 + t * t));
            assert!((d - want).abs() < 1e-6, "t={t}: {d} vs {want}");
        }
    }

    #[test]
    fn atom_examples() {
        let ladder = default_eps_ladder();
        assert!((recover_atom(minus_inv, 0.0, &ladder, 1e-9).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(recover_atom(|z| z, 1.3, &ladder, 1e-9).unwrap(), 0.0);
        let rep = NevanlinnaRep::new(0.0, 0.0, Measure::atomic(vec![(2.0, 0.5), (-1.0, 0.3)]).unwrap()).unwrap();
        let f = |z| rep.eval(z).unwrap().finite().unwrap();
        assert!((recover_atom(f, 2.0, &ladder, 1e-9).unwrap() - 0.5).abs() < 1e-8);
    }
}
