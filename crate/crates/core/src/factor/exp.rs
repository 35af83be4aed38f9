//! Positive factors written as `e^h` with `h` built from a piecewise
//! constant density `ψ`.

use core::f64::consts::PI;

use alloc::vec::Vec;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::{Composite, PickFunction};
use crate::extreal::{Arc, ArcSet, ExtComplex, ExtPoint};
use crate::grid::certification_grid;
use crate::krein::{log_p, KreinProduct};
use crate::nevanlinna::ClosedSet;
use crate::numeric::{extrapolate_to_zero, same_point};
use crate::{Error, Result};

/// `ψ = value` on the open interval `(l, r)`; either end may be infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsiPiece {
    pub l: f64,
    pub r: f64,
    pub value: f64,
}

impl PsiPiece {
    fn arc(&self) -> Arc {
        if self.l == f64::NEG_INFINITY && self.r == f64::INFINITY {
            Arc::punctured(ExtPoint::Infinity)
        } else {
            Arc::from_raw(self.l, self.r)
        }
    }

    fn bounded(&self) -> bool {
        self.l.is_finite() && self.r.is_finite()
    }
}

/// `h(z) = γ + Σ ψ_k ∫_{l_k}^{r_k} (1 + zt)/(t − z) dt/(1 + t²)`.
///
/// Each integral is `log p_{(l_k, r_k)}(z)`, so `Im h` is the weighted sum
/// of the angles the pieces subtend.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ExpRep {
    gamma: f64,
    pieces: Vec<PsiPiece>,
}

impl ExpRep {
    /// Pieces must be disjoint with `l < r` and `ψ ∈ [0, 1]`. Zero pieces
    /// are dropped.
    pub fn new(gamma: f64, pieces: Vec<PsiPiece>) -> Result<Self> {
        if !gamma.is_finite() {
            return Err(Error::InvalidInput("gamma must be finite".into()));
        }
        let mut pieces: Vec<PsiPiece> = pieces.into_iter().filter(|p| p.value != 0.0).collect();
        for p in &pieces {
            if !(p.l < p.r) || p.l == f64::INFINITY || p.r == f64::NEG_INFINITY {
                return Err(Error::InvalidInput("psi pieces need l < r".into()));
            }
            if !(0.0..=1.0).contains(&p.value) {
                return Err(Error::InvalidInput("psi values must lie in [0, 1]".into()));
            }
        }
        pieces.sort_by(|a, b| a.l.total_cmp(&b.l));
        if pieces.windows(2).any(|w| w[1].l < w[0].r && !same_point(w[1].l, w[0].r)) {
            return Err(Error::Overlap);
        }
        Ok(ExpRep { gamma, pieces })
    }

    /// `h ≡ 0`.
    pub fn zero() -> Self {
        ExpRep::default()
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn pieces(&self) -> &[PsiPiece] {
        &self.pieces
    }

    /// Pieces with `ψ = 1`, which may make `e^h` negative on an interval.
    pub fn saturated(&self) -> impl Iterator<Item = &PsiPiece> {
        self.pieces.iter().filter(|p| p.value >= 1.0)
    }

    /// Closure of the support of `ψ`.
    pub fn support(&self) -> ClosedSet {
        ClosedSet {
            points: Vec::new(),
            intervals: self.pieces.iter().map(|p| (p.l, p.r)).collect(),
            infinity: self.pieces.iter().any(|p| !p.bounded()),
        }
    }

    /// Union of the open pieces.
    pub fn support_arcs(&self) -> ArcSet {
        ArcSet::normalize(self.pieces.iter().map(PsiPiece::arc))
    }

    /// `h(z)` for `Im z > 0` or real `z` off the closed pieces.
    pub fn h(&self, z: Complex64) -> Result<Complex64> {
        if z.im < 0.0 || !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::InvalidInput("evaluation point must lie in the closed upper half-plane".into()));
        }
        if z.im == 0.0 && self.support().contains(ExtPoint::Finite(z.re)) {
            return Err(Error::OnSupport(z.re));
        }
        let mut h = Complex64::new(self.gamma, 0.0);
        for p in &self.pieces {
            h += log_p(&p.arc(), z) * p.value;
        }
        Ok(h)
    }

    /// `h(∞) = γ + Σ ψ_k ln(|i − l_k|/|i − r_k|)` when every piece is
    /// bounded.
    pub fn h_at_infinity(&self) -> Result<f64> {
        if self.pieces.iter().any(|p| !p.bounded()) {
            return Err(Error::OnSupport(f64::INFINITY));
        }
        Ok(self.gamma + self.pieces.iter().map(|p| p.value * (p.l.hypot(1.0) / p.r.hypot(1.0)).ln()).sum::<f64>())
    }

    /// `e^{h(z)}` on the extended plane.
    pub fn eval_ext(&self, z: ExtComplex) -> Result<Complex64> {
        match z {
            ExtComplex::Finite(z) => Ok(self.h(z)?.exp()),
            ExtComplex::Infinity => Ok(Complex64::new(self.h_at_infinity()?.exp(), 0.0)),
        }
    }
}

/// `(h(z), e^{h(z)})`.
pub fn exp_eval(e: &ExpRep, z: Complex64) -> Result<(Complex64, Complex64)> {
    let h = e.h(z)?;
    Ok((h, h.exp()))
}

/// `k_O · e^h` as a member of the class, after checking that the pieces of
/// `ψ` avoid `O` and that the argument stays in `[0, π]` on the standard grid.
pub fn compose_in_class(o: &ArcSet, e: ExpRep) -> Result<PickFunction> {
    if e.support_arcs().overlaps(o) {
        return Err(Error::Overlap);
    }
    let f = PickFunction::Composite(Composite { c: 1.0, krein: KreinProduct::explicit(o.clone()), exp: Some(e) });
    let sigma = f.sigma()?;
    for z in certification_grid(&sigma) {
        let v = f.eval(z)?.finite().ok_or(Error::Certification("pole inside the upper half-plane".into()))?;
        if v.im < -1e-12 * v.norm().max(1.0) {
            return Err(Error::Certification(alloc::format!("Im = {:e} at {z}", v.im)));
        }
    }
    Ok(f)
}

/// `ψ(t) = lim_{ε↓0} arg g(t + iε)/π`, clamped to `[0, 1]`.
pub fn psi_recover<G>(g: G, t: f64, ladder: &[f64], rel_tol: f64) -> Result<f64>
where
    G: Fn(Complex64) -> Complex64,
{
    if ladder.iter().any(|&e| !(e > 0.0)) {
        return Err(Error::InvalidInput("ε must be positive".into()));
    }
    let v = extrapolate_to_zero(ladder, |e| g(Complex64::new(t, e)).arg() / PI, rel_tol)?;
    Ok(v.clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::default_eps_ladder;

    const I: Complex64 = Complex64::new(0.0, 1.0);

    fn half_on_unit() -> ExpRep {
        ExpRep::new(0.0, vec![PsiPiece { l: -1.0, r: 1.0, value: 0.5 }]).unwrap()
    }

    #[test]
    fn trivial_density() {
        let (h, e) = exp_eval(&ExpRep::zero(), Complex64::new(0.3, 2.0)).unwrap();
        assert_eq!(h, Complex64::new(0.0, 0.0));
        assert_eq!(e, Complex64::new(1.0, 0.0));
    }

    #[test]
    fn half_density_angle() {
        let (h, _) = exp_eval(&half_on_unit(), I).unwrap();
        assert!((h.im - PI / 4.0).abs() < 1e-15);
        // symmetric piece: the real part vanishes at i
        assert!(h.re.abs() < 1e-15);
    }

    #[test]
    fn wide_saturated_piece_approaches_pi() {
        let e = ExpRep::new(0.0, vec![PsiPiece { l: -1e6, r: 1e6, value: 1.0 }]).unwrap();
        let (h, _) = exp_eval(&e, I).unwrap();
        assert!(h.im <= PI && PI - h.im < 1e-5);
        assert_eq!(e.saturated().count(), 1);
    }

    #[test]
    fn positive_off_support() {
        let e = ExpRep::new(0.4, vec![PsiPiece { l: 0.0, r: 2.0, value: 0.3 }]).unwrap();
        for x in [-5.0, -0.1, 2.5, 40.0] {
            let (h, v) = exp_eval(&e, Complex64::new(x, 0.0)).unwrap();
            assert_eq!(h.im, 0.0);
            assert!(v.re > 0.0);
        }
        assert!(matches!(e.h(Complex64::new(1.0, 0.0)), Err(Error::OnSupport(_))));
    }

    #[test]
    fn closed_form_matches_quadrature() {
        let e = ExpRep::new(0.0, vec![PsiPiece { l: -0.5, r: 2.0, value: 0.7 }]).unwrap();
        let z = Complex64::new(0.3, 0.8);
        let kernel = |t: f64| (z * t + 1.0) / (Complex64::new(t, 0.0) - z) / (1.0 + t * t) * 0.7;
        let (q, _) = crate::numeric::integrate(kernel, -0.5, 2.0, 1e-13, 1e-13).unwrap();
        assert!((e.h(z).unwrap() - q).norm() < 1e-11);
    }

    #[test]
    fn half_line_pieces() {
        let e = ExpRep::new(0.0, vec![PsiPiece { l: f64::NEG_INFINITY, r: 0.0, value: 0.5 }]).unwrap();
        assert!(e.support().infinity);
        let (h, v) = exp_eval(&e, Complex64::new(1.0, 0.0)).unwrap();
        assert!(h.im == 0.0 && v.re > 0.0);
        assert!((e.h(I).unwrap().im - PI / 4.0).abs() < 1e-15);
        let whole = ExpRep::new(0.0, vec![PsiPiece { l: f64::NEG_INFINITY, r: f64::INFINITY, value: 1.0 }]).unwrap();
        assert!((whole.h(Complex64::new(0.2, 0.3)).unwrap().im - PI).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_pieces() {
        assert!(ExpRep::new(0.0, vec![PsiPiece { l: 0.0, r: 1.0, value: 1.5 }]).is_err());
        let two = vec![PsiPiece { l: 0.0, r: 1.0, value: 0.5 }, PsiPiece { l: 0.5, r: 2.0, value: 0.5 }];
        assert_eq!(ExpRep::new(0.0, two), Err(Error::Overlap));
    }

    #[test]
    fn composition_examples() {
        let o = ArcSet::single(Arc::finite(0.0, 1.0).unwrap());
        let e = ExpRep::new(0.0, vec![PsiPiece { l: 2.0, r: 3.0, value: 0.5 }]).unwrap();
        assert!(compose_in_class(&o, e).is_ok());
        let f = compose_in_class(&ArcSet::empty(), ExpRep::zero()).unwrap();
        assert_eq!(f.eval(Complex64::new(1.0, 3.0)).unwrap(), ExtComplex::real(1.0));
        let bad = ExpRep::new(0.0, vec![PsiPiece { l: 0.5, r: 0.7, value: 0.5 }]).unwrap();
        assert!(matches!(compose_in_class(&o, bad), Err(Error::Overlap)));
    }

    #[test]
    fn recovery_examples() {
        let ladder = default_eps_ladder();
        let e = half_on_unit();
        let v = psi_recover(|z| e.h(z).unwrap().exp(), 0.0, &ladder, 1e-6).unwrap();
        assert!((v - 0.5).abs() < 1e-4);
        assert_eq!(psi_recover(|_| Complex64::new(1.0, 0.0), 0.7, &ladder, 1e-9).unwrap(), 0.0);
        let q = ExpRep::new(0.0, vec![PsiPiece { l: 0.0, r: 1.0, value: 0.25 }]).unwrap();
        let v = psi_recover(|z| q.h(z).unwrap().exp(), 2.0, &ladder, 1e-6).unwrap();
        assert!(v.abs() < 1e-4);
    }
}
