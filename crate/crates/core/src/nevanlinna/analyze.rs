//! Support `σ(f)`, its complement `Ω(f)` and the negativity set `Γ(f)`.

use core::f64::consts::{FRAC_PI_2, PI};

use alloc::vec::Vec;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::NevanlinnaRep;
use crate::extreal::{Arc, ArcSet, ExtPoint};
use crate::numeric::{bisect, same_point, shrink_until};
use crate::{Error, Result};

/// Closed subset of `ℝ ∪ {∞}` given by finitely many points and closed
/// intervals, with `∞` possibly adjoined. Intervals may be half-lines
/// (infinite ends) only when `∞` is adjoined.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ClosedSet {
    pub points: Vec<f64>,
    pub intervals: Vec<(f64, f64)>,
    pub infinity: bool,
}

impl ClosedSet {
    pub fn new(points: Vec<f64>, intervals: Vec<(f64, f64)>, infinity: bool) -> Result<Self> {
        let bad = |&(l, r): &(f64, f64)| l.is_nan() || r.is_nan() || l > r || l == f64::INFINITY || r == f64::NEG_INFINITY;
        if points.iter().any(|p| !p.is_finite()) || intervals.iter().any(bad) {
            return Err(Error::InvalidInput("closed set pieces need l <= r".into()));
        }
        if !infinity && intervals.iter().any(|&(l, r)| !(l.is_finite() && r.is_finite())) {
            return Err(Error::InvalidInput("half-lines require infinity in the set".into()));
        }
        Ok(ClosedSet { points, intervals, infinity })
    }

    /// Sorted, merged closed blocks `[lo, hi]` (points are degenerate blocks).
    pub fn blocks(&self) -> Vec<(f64, f64)> {
        let mut b: Vec<(f64, f64)> = self.points.iter().map(|&p| (p, p)).chain(self.intervals.iter().copied()).collect();
        b.sort_by(|x, y| x.0.total_cmp(&y.0));
        let mut out: Vec<(f64, f64)> = Vec::with_capacity(b.len());
        for (lo, hi) in b {
            if let Some(cur) = out.last_mut() {
                if lo <= cur.1 || same_point(lo, cur.1) {
                    cur.1 = cur.1.max(hi);
                    continue;
                }
            }
            out.push((lo, hi));
        }
        out
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty() && self.intervals.is_empty() && !self.infinity
    }

    pub fn contains(&self, p: ExtPoint) -> bool {
        match p {
            ExtPoint::Infinity => self.infinity,
            ExtPoint::Finite(x) => self.blocks().iter().any(|&(lo, hi)| (x >= lo && x <= hi) || same_point(x, lo) || same_point(x, hi)),
        }
    }

    /// Lebesgue measure of the finite part.
    pub fn measure(&self) -> f64 {
        self.blocks().iter().map(|b| b.1 - b.0).sum()
    }

    /// The open complement in `ℝ ∪ {∞}`.
    pub fn complement(&self) -> ArcSet {
        let blocks = self.blocks();
        if blocks.is_empty() {
            return if self.infinity { ArcSet::single(Arc::punctured(ExtPoint::Infinity)) } else { ArcSet::full() };
        }
        let mut arcs: Vec<Arc> = blocks.windows(2).map(|w| Arc::from_raw(w[0].1, w[1].0)).collect();
        let (first, last) = (blocks[0].0, blocks[blocks.len() - 1].1);
        if self.infinity {
            if first > f64::NEG_INFINITY {
                arcs.push(Arc::from_raw(f64::NEG_INFINITY, first));
            }
            if last < f64::INFINITY {
                arcs.push(Arc::from_raw(last, f64::INFINITY));
            }
        } else {
            arcs.push(Arc::from_raw(last, first));
        }
        ArcSet::normalize(arcs)
    }

    /// Whether `other ⊆ self` (finite descriptors, tolerant endpoints).
    pub fn contains_set(&self, other: &ClosedSet) -> bool {
        if other.infinity && !self.infinity {
            return false;
        }
        let mine = self.blocks();
        other.blocks().iter().all(|&(lo, hi)| {
            mine.iter().any(|&(l, h)| (l <= lo || same_point(l, lo)) && (hi <= h || same_point(hi, h)))
        })
    }
}

/// `σ(f)`, `Ω(f)`, `Γ(f)` and the zeros of `f` in `Ω(f)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisResult {
    pub sigma: ClosedSet,
    pub omega: ArcSet,
    pub gamma: ArcSet,
    pub zeros: Vec<ExtPoint>,
}

/// Points beyond this magnitude found by bisection in the angular variable
/// are identified with `∞`.
const INFINITY_CUTOFF: f64 = 1e15;

pub(crate) fn theta_range(arc: &Arc) -> (f64, f64) {
    let (b, a) = arc.raw();
    let lo = b.atan();
    let mut hi = a.atan();
    if arc.wraps() {
        hi += PI;
    }
    (lo, hi)
}

fn to_point(theta: f64) -> ExtPoint {
    let x = theta.tan();
    if (theta - FRAC_PI_2).abs() < 1e-15 || x.abs() > INFINITY_CUTOFF {
        ExtPoint::Infinity
    } else {
        ExtPoint::Finite(x)
    }
}

/// `Γ = {x ∈ Ω : f(x) < 0}` for a real evaluator `f` increasing along each
/// component of `Ω` (as every Pick function is).
///
/// Components are parametrized by `x = tan θ`, so arcs through `∞` need no
/// special treatment. On each component `f` is sampled toward both ends to
/// certify the signs, and the sign change (if any) is bisected. With
/// `zero_at_infinity` the component through `∞` is cut exactly there.
pub fn negativity_set<F>(omega: &ArcSet, f: F, zero_at_infinity: bool) -> Result<(ArcSet, Vec<ExtPoint>)>
where
    F: Fn(f64) -> f64,
{
    if omega.is_full() {
        // f is a real constant on the whole circle
        let v = f(0.0);
        return Ok((if v < 0.0 { ArcSet::full() } else { ArcSet::empty() }, Vec::new()));
    }
    let mut pieces = Vec::new();
    let mut zeros = Vec::new();
    for arc in omega.arcs() {
        if zero_at_infinity && arc.contains(ExtPoint::Infinity) {
            pieces.push(Arc::new(arc.b(), ExtPoint::Infinity)?);
            zeros.push(ExtPoint::Infinity);
            continue;
        }
        let (lo, hi) = theta_range(arc);
        let g = |th: f64| f(th.tan());
        let half = 0.5 * (hi - lo);
        let neg = shrink_until(lo, 1.0, half, |th| g(th) < 0.0);
        let pos = shrink_until(hi, -1.0, half, |th| g(th) > 0.0);
        match (neg, pos) {
            (None, _) => {}
            (Some(_), None) => pieces.push(*arc),
            (Some(n), Some(p)) => {
                let th = bisect(n, p, g)?;
                let mut zero = to_point(th);
                if let ExtPoint::Finite(x) = zero {
                    // polish in x when the bracket stays on one side of ∞
                    let (xn, xp) = (n.tan(), p.tan());
                    if xn < xp && (n < FRAC_PI_2) == (p < FRAC_PI_2) {
                        zero = ExtPoint::Finite(bisect(xn, xp, &f).unwrap_or(x));
                    }
                }
                if zero.same(arc.b()) {
                    continue;
                }
                pieces.push(Arc::new(arc.b(), zero)?);
                zeros.push(zero);
            }
        }
    }
    Ok((ArcSet::normalize(pieces).regularize(), zeros))
}

/// `σ(f)` read off the representation.
pub fn support(rep: &NevanlinnaRep) -> ClosedSet {
    ClosedSet {
        points: rep.rho.atoms().iter().map(|a| a.0).collect(),
        intervals: rep.rho.active_ac().map(|p| (p.l, p.r)).collect(),
        infinity: rep.alpha > 0.0,
    }
}

/// Support, complement and negativity set of a structured representative.
pub fn analyze(rep: &NevanlinnaRep) -> Result<AnalysisResult> {
    let sigma = support(rep);
    let omega = sigma.complement();
    let scale = rep.beta.abs() + rep.rho.atoms().iter().map(|&(t, w)| (w * t).abs()).sum::<f64>()
        + rep.rho.active_ac().map(|p| p.mass() * p.l.abs().max(p.r.abs())).sum::<f64>();
    let zero_at_infinity = rep.value_at_infinity().is_some_and(|v| v.abs() <= 1e-14 * scale.max(1e-300));
    let f = |x: f64| match rep.eval(Complex64::new(x, 0.0)) {
        Ok(v) => v.finite().map_or(f64::NAN, |v| v.re),
        Err(_) => f64::NAN,
    };
    let (gamma, zeros) = negativity_set(&omega, f, zero_at_infinity)?;
    Ok(AnalysisResult { sigma, omega, gamma, zeros })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nevanlinna::{AcPiece, Measure};
    use ExtPoint::{Finite as F, Infinity as Inf};

    fn atomic(alpha: f64, beta: f64, atoms: Vec<(f64, f64)>) -> NevanlinnaRep {
        NevanlinnaRep::new(alpha, beta, Measure::atomic(atoms).unwrap()).unwrap()
    }

    #[test]
    fn minus_inverse() {
        let r = analyze(&atomic(0.0, 0.0, vec![(0.0, 1.0)])).unwrap();
        assert_eq!(r.sigma.points, [0.0]);
        assert_eq!(r.omega, ArcSet::single(Arc::punctured(F(0.0))));
        assert_eq!(r.gamma, ArcSet::single(Arc::new(F(0.0), Inf).unwrap()));
    }

    #[test]
    fn identity() {
        let r = analyze(&atomic(1.0, 0.0, vec![])).unwrap();
        assert!(r.sigma.infinity);
        assert_eq!(r.gamma, ArcSet::single(Arc::new(Inf, F(0.0)).unwrap()));
    }

    #[test]
    fn constant_functions() {
        assert!(analyze(&atomic(0.0, -2.0, vec![])).unwrap().gamma.is_full());
        assert!(analyze(&atomic(0.0, 2.0, vec![])).unwrap().gamma.is_empty());
    }

    #[test]
    fn two_atoms_against_sign_scan() {
        let rep = atomic(0.0, 0.0, vec![(-1.0, 1.0), (1.0, 1.0)]);
        let r = analyze(&rep).unwrap();
        assert_eq!(r.gamma.len(), 2);
        // brute force: dense sign scan away from the atoms
        for k in 0..4000 {
            let x = -20.0 + 40.0 * (k as f64 + 0.5) / 4000.0;
            if (x.abs() - 1.0).abs() < 1e-3 {
                continue;
            }
            let v = rep.eval(Complex64::new(x, 0.0)).unwrap().finite().unwrap().re;
            assert_eq!(v < 0.0, r.gamma.contains(F(x)), "x={x}");
        }
        assert!(r.gamma.is_regular());
    }

    #[test]
    fn wrap_component_with_negative_infinity_value() {
        // f(∞) = β − Σ w t = -1 - 0.5 < 0, so Γ passes through ∞
        let rep = atomic(0.0, -1.0, vec![(1.0, 0.5)]);
        let r = analyze(&rep).unwrap();
        assert!(r.gamma.contains(Inf));
        assert_eq!(r.gamma.len(), 1);
        let zero = r.zeros[0].finite().unwrap();
        assert!(rep.eval(Complex64::new(zero, 0.0)).unwrap().finite().unwrap().norm() < 1e-12);
    }

    #[test]
    fn density_piece_endpoints() {
        let rep = NevanlinnaRep::new(0.0, 0.0, Measure::new(vec![], vec![AcPiece { l: -1.0, r: 1.0, density: 0.2 }], None).unwrap()).unwrap();
        let r = analyze(&rep).unwrap();
        assert_eq!(r.sigma.intervals, [(-1.0, 1.0)]);
        assert_eq!(r.omega.len(), 1);
        // f(∞) = 0 by symmetry, so Γ = (1, ∞)
        assert_eq!(r.gamma, ArcSet::single(Arc::new(F(1.0), Inf).unwrap()));
    }

    #[test]
    fn complement_cases() {
        let s = ClosedSet::new(vec![2.0], vec![(0.0, 1.0)], true).unwrap();
        let o = s.complement();
        assert_eq!(o.len(), 3);
        assert!(!o.contains(Inf) && o.contains(F(1.5)) && o.contains(F(-4.0)));
        assert!(ClosedSet::default().complement().is_full());
    }
}
