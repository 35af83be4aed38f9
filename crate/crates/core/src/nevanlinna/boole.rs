//! Cauchy transforms and the measure-preservation identities for atomic
//! measures.

use alloc::vec::Vec;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::{Measure, NevanlinnaRep};
use crate::extreal::ExtComplex;
use crate::numeric::{bisect, expand_until, shrink_until};
use crate::{Error, Result};

/// `G_μ(z) = ∫ dμ(t)/(z − t)`.
pub fn cauchy_transform(mu: &Measure, z: Complex64) -> Result<ExtComplex> {
    if z.im < 0.0 {
        return Err(Error::InvalidInput("cauchy transform evaluated below the real axis".into()));
    }
    if z.im == 0.0 {
        if mu.atom_at(z.re) {
            return Ok(ExtComplex::Infinity);
        }
        if mu.on_ac_support(z.re) {
            return Err(Error::OnSupport(z.re));
        }
    }
    let mut g = Complex64::new(0.0, 0.0);
    for &(t, w) in mu.atoms() {
        g += w / (z - t);
    }
    for p in mu.active_ac() {
        g += ((z - p.l).ln() - (z - p.r).ln()) * p.density;
    }
    Ok(ExtComplex::Finite(g))
}

/// Lengths of `{G_μ > y}` and `{G_μ < −y}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Superlevel {
    pub plus: f64,
    pub minus: f64,
}

/// Measures of the superlevel sets of the Cauchy transform of an atomic
/// measure, computed from the roots of `G_μ = ±y` on each gap between atoms
/// (where `G_μ` decreases from `+∞` to `−∞`).
pub fn boole_superlevel_measure(mu: &Measure, y: f64) -> Result<Superlevel> {
    if !mu.is_atomic() {
        return Err(Error::InvalidInput("boole identity needs a purely atomic measure".into()));
    }
    if !(y > 0.0) {
        return Err(Error::InvalidInput("level must be positive".into()));
    }
    let atoms = mu.atoms();
    if atoms.is_empty() {
        return Ok(Superlevel { plus: 0.0, minus: 0.0 });
    }
    let g = |x: f64| atoms.iter().map(|&(t, w)| w / (x - t)).sum::<f64>();
    let mass = mu.total_mass();
    let reach = mass / y + 1.0;
    let mut plus = 0.0;
    let mut minus = 0.0;
    for (k, &(t, _)) in atoms.iter().enumerate() {
        // gap to the right of t: G decreases from +∞
        let upper = match atoms.get(k + 1) {
            Some(&(next, _)) => next,
            None => t + reach,
        };
        plus += root_in(t, upper, |x| g(x) - y)? - t;
        // gap to the left of t: G decreases to −∞
        let lower = if k == 0 { t - reach } else { atoms[k - 1].0 };
        minus += t - root_in(lower, t, |x| g(x) + y)?;
    }
    Ok(Superlevel { plus, minus })
}

/// Root of a decreasing function on `(lo, hi)` with `h → +∞` at `lo` when
/// `lo` is an atom (or `h(lo) > 0` otherwise) and `h < 0` near `hi`.
fn root_in<H: Fn(f64) -> f64>(lo: f64, hi: f64, h: H) -> Result<f64> {
    let half = 0.5 * (hi - lo);
    let a = shrink_until(lo, 1.0, half, |x| h(x) > 0.0).ok_or(Error::BisectionFailed { lo, hi })?;
    let b = shrink_until(hi, -1.0, half, |x| h(x) < 0.0).ok_or(Error::BisectionFailed { lo, hi })?;
    bisect(a, b, h)
}

/// Total length of `f⁻¹((c, d))` for `f = z + β + ∫ (1 + zt)/(t − z) dρ`
/// with atomic `ρ`: on each of the branches between atoms `f` increases
/// from `−∞` to `+∞`, contributing `x_d − x_c`.
pub fn letac_preimage_length(rep: &NevanlinnaRep, c: f64, d: f64) -> Result<f64> {
    if (rep.alpha - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidInput("measure preservation needs alpha = 1".into()));
    }
    if !rep.rho.is_atomic() {
        return Err(Error::InvalidInput("measure preservation needs an atomic measure".into()));
    }
    if !(c.is_finite() && d.is_finite() && c < d) {
        return Err(Error::InvalidInput("need finite c < d".into()));
    }
    let f = |x: f64| rep.eval(Complex64::new(x, 0.0)).ok().and_then(|v| v.finite()).map_or(f64::NAN, |v| v.re);
    let mut poles: Vec<f64> = rep.rho.atoms().iter().map(|a| a.0).collect();
    poles.sort_by(f64::total_cmp);
    let mut total = 0.0;
    for k in 0..=poles.len() {
        let left = if k == 0 { None } else { Some(poles[k - 1]) };
        let right = poles.get(k).copied();
        let xc = branch_solve(left, right, |x| f(x) - c)?;
        let xd = branch_solve(left, right, |x| f(x) - d)?;
        total += xd - xc;
    }
    Ok(total)
}

/// Root of an increasing `h` going from `−∞` to `+∞` on `(left, right)`,
/// where missing ends are `∓∞`.
fn branch_solve<H: Fn(f64) -> f64>(left: Option<f64>, right: Option<f64>, h: H) -> Result<f64> {
    let (lo, hi) = match (left, right) {
        (Some(l), Some(r)) => {
            let half = 0.5 * (r - l);
            (shrink_until(l, 1.0, half, |x| h(x) < 0.0), shrink_until(r, -1.0, half, |x| h(x) > 0.0))
        }
        (None, Some(r)) => (expand_until(r, -1.0, 1.0, |x| h(x) < 0.0), shrink_until(r, -1.0, 1.0, |x| h(x) > 0.0)),
        (Some(l), None) => (shrink_until(l, 1.0, 1.0, |x| h(x) < 0.0), expand_until(l, 1.0, 1.0, |x| h(x) > 0.0)),
        (None, None) => (expand_until(0.0, -1.0, 1.0, |x| h(x) < 0.0), expand_until(0.0, 1.0, 1.0, |x| h(x) > 0.0)),
    };
    match (lo, hi) {
        (Some(a), Some(b)) if a < b => bisect(a, b, h),
        (Some(a), Some(b)) => bisect(b.min(a), a.max(b), h),
        _ => Err(Error::BisectionFailed { lo: left.unwrap_or(f64::NEG_INFINITY), hi: right.unwrap_or(f64::INFINITY) }),
    }
}
