//! Real Möbius automorphisms of the upper half-plane and conformal maps of
//! the half-plane onto the unit disk.

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::extreal::{Arc, ArcSet, ExtComplex, ExtPoint};
use crate::{Error, Result};

/// `z ↦ (az + b)/(cz + d)` with real coefficients and `ad − bc = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfPlaneAuto {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

impl HalfPlaneAuto {
    /// Normalizes the coefficients to unit determinant. Maps with
    /// `ad − bc ≤ 0` do not preserve ℂ⁺ and are rejected.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let det = a * d - b * c;
        if !(det > 0.0) || ![a, b, c, d].iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidInput("automorphism needs ad - bc > 0".into()));
        }
        let s = det.sqrt();
        Ok(HalfPlaneAuto { a: a / s, b: b / s, c: c / s, d: d / s })
    }

    pub fn identity() -> Self {
        HalfPlaneAuto { a: 1.0, b: 0.0, c: 0.0, d: 1.0 }
    }

    pub fn translation(t: f64) -> Self {
        HalfPlaneAuto { a: 1.0, b: t, c: 0.0, d: 1.0 }
    }

    /// `z ↦ −1/z`.
    pub fn inversion() -> Self {
        HalfPlaneAuto { a: 0.0, b: -1.0, c: 1.0, d: 0.0 }
    }

    pub fn coefficients(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn inverse(&self) -> Self {
        HalfPlaneAuto { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        HalfPlaneAuto {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        }
    }

    pub fn apply(&self, z: Complex64) -> ExtComplex {
        let den = z * self.c + self.d;
        if den == Complex64::new(0.0, 0.0) {
            return ExtComplex::Infinity;
        }
        ExtComplex::Finite((z * self.a + self.b) / den)
    }

    pub fn apply_ext(&self, z: ExtComplex) -> ExtComplex {
        match z {
            ExtComplex::Finite(z) => self.apply(z),
            ExtComplex::Infinity if self.c == 0.0 => ExtComplex::Infinity,
            ExtComplex::Infinity => ExtComplex::real(self.a / self.c),
        }
    }

    /// Action on the boundary circle.
    pub fn apply_point(&self, p: ExtPoint) -> ExtPoint {
        match p {
            ExtPoint::Infinity if self.c == 0.0 => ExtPoint::Infinity,
            ExtPoint::Infinity => ExtPoint::Finite(self.a / self.c),
            ExtPoint::Finite(x) => {
                let den = self.c * x + self.d;
                if den == 0.0 {
                    ExtPoint::Infinity
                } else {
                    ExtPoint::Finite((self.a * x + self.b) / den)
                }
            }
        }
    }

    /// `φ⁻¹(arc)`; orientation is preserved, so endpoints map to endpoints.
    pub fn pullback_arc(&self, arc: &Arc) -> Arc {
        let inv = self.inverse();
        let b = inv.apply_point(arc.b());
        let a = inv.apply_point(arc.a());
        if arc.is_punctured() {
            return Arc::punctured(b);
        }
        // distinct points stay distinct under a bijection
        Arc::new(b, a).unwrap_or_else(|_| Arc::punctured(b))
    }

    /// `φ⁻¹(O)` in canonical form.
    pub fn pullback_arcset(&self, set: &ArcSet) -> ArcSet {
        if set.is_full() {
            return ArcSet::full();
        }
        ArcSet::normalize(set.arcs().iter().map(|a| self.pullback_arc(a)))
    }
}

/// `w ↦ u·(w − p)/(w − p̄)` with `Im p > 0` and `|u| = 1`: a conformal map of
/// ℂ⁺ onto the unit disk sending `p` to `0` and `∞` to `u`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskMap {
    p: Complex64,
    unit: Complex64,
}

impl DiskMap {
    /// Cayley map based at `ζ ∈ ℂ⁺`: `ζ ↦ 0`, `∞ ↦ 1`.
    pub fn cayley(zeta: Complex64) -> Result<Self> {
        if !(zeta.im > 0.0) || !zeta.re.is_finite() || !zeta.im.is_finite() {
            return Err(Error::InvalidInput("cayley base point must lie in the upper half-plane".into()));
        }
        Ok(DiskMap { p: zeta, unit: Complex64::new(1.0, 0.0) })
    }

    /// The map with `m(0) = α` and `m(∞) = β` for unimodular `α ≠ β`,
    /// choosing `|p| = 1`.
    pub fn target(alpha: Complex64, beta: Complex64) -> Result<Self> {
        for u in [alpha, beta] {
            if (u.norm() - 1.0).abs() > 1e-9 {
                return Err(Error::InvalidInput("target values must be unimodular".into()));
            }
        }
        let ratio = alpha / beta;
        let phase = ratio.arg();
        if (ratio - 1.0).norm() <= 1e-12 {
            return Err(Error::InvalidInput("target values must differ".into()));
        }
        let theta = if phase > 0.0 { phase / 2.0 } else { phase / 2.0 + core::f64::consts::PI };
        Ok(DiskMap { p: Complex64::from_polar(1.0, theta), unit: beta / beta.norm() })
    }

    /// The point sent to `0`.
    pub fn center(&self) -> Complex64 {
        self.p
    }

    pub fn apply(&self, w: ExtComplex) -> ExtComplex {
        match w {
            ExtComplex::Infinity => ExtComplex::Finite(self.unit),
            ExtComplex::Finite(w) => {
                let den = w - self.p.conj();
                if den == Complex64::new(0.0, 0.0) {
                    ExtComplex::Infinity
                } else {
                    ExtComplex::Finite(self.unit * (w - self.p) / den)
                }
            }
        }
    }

    /// Inverse map from the closed disk; `u ↦ ∞`.
    pub fn invert(&self, v: Complex64) -> ExtComplex {
        let w = v / self.unit;
        let den = Complex64::new(1.0, 0.0) - w;
        if den.norm() == 0.0 {
            return ExtComplex::Infinity;
        }
        ExtComplex::Finite((self.p - w * self.p.conj()) / den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const I: Complex64 = Complex64::new(0.0, 1.0);

    fn close(x: ExtComplex, y: Complex64) -> bool {
        x.finite().is_some_and(|x| (x - y).norm() < 1e-14)
    }

    #[test]
    fn apply_examples() {
        assert!(close(HalfPlaneAuto::identity().apply(I), I));
        assert!(close(HalfPlaneAuto::translation(1.0).apply(I), Complex64::new(1.0, 1.0)));
        assert!(close(HalfPlaneAuto::inversion().apply(I), I));
        assert_eq!(HalfPlaneAuto::inversion().apply(Complex64::new(0.0, 0.0)), ExtComplex::Infinity);
    }

    #[test]
    fn rejects_orientation_reversing() {
        assert!(HalfPlaneAuto::new(1.0, 0.0, 0.0, -1.0).is_err());
        let m = HalfPlaneAuto::new(2.0, 1.0, 0.0, 3.0).unwrap();
        let [a, b, c, d] = m.coefficients();
        assert!((a * d - b * c - 1.0).abs() < 1e-15);
    }

    #[test]
    fn pullback_examples() {
        let shift = HalfPlaneAuto::translation(1.0);
        let o = ArcSet::single(Arc::finite(0.0, 1.0).unwrap());
        assert_eq!(shift.pullback_arcset(&o), ArcSet::single(Arc::finite(-1.0, 0.0).unwrap()));

        let inv = HalfPlaneAuto::inversion();
        let o = ArcSet::single(Arc::finite(1.0, 2.0).unwrap());
        let got = inv.pullback_arcset(&o);
        assert_eq!(got, ArcSet::single(Arc::finite(-1.0, -0.5).unwrap()));
        // interior sample: φ maps a point of φ⁻¹(O) into O
        let x = -0.7;
        assert!(got.contains(ExtPoint::Finite(x)) && o.contains(inv.apply_point(ExtPoint::Finite(x))));

        let w = ArcSet::single(Arc::finite(1.0, 0.0).unwrap());
        let got = shift.pullback_arcset(&w);
        assert_eq!(got, ArcSet::single(Arc::finite(0.0, -1.0).unwrap()));
        assert!(got.arcs()[0].wraps());
    }

    #[test]
    fn pullback_moves_arc_onto_infinity() {
        let inv = HalfPlaneAuto::inversion();
        let o = ArcSet::single(Arc::finite(-1.0, 0.0).unwrap());
        let got = inv.pullback_arcset(&o);
        assert_eq!(got, ArcSet::single(Arc::new(ExtPoint::Finite(1.0), ExtPoint::Infinity).unwrap()));
    }

    #[test]
    fn cayley_examples() {
        let m = DiskMap::cayley(I).unwrap();
        assert!(close(m.apply(ExtComplex::Finite(I)), Complex64::new(0.0, 0.0)));
        assert!(close(m.apply(ExtComplex::real(0.0)), Complex64::new(-1.0, 0.0)));
        assert!(close(m.apply(ExtComplex::Infinity), Complex64::new(1.0, 0.0)));
        assert_eq!(m.invert(Complex64::new(1.0, 0.0)), ExtComplex::Infinity);
        assert!(close(m.invert(Complex64::new(-1.0, 0.0)), Complex64::new(0.0, 0.0)));
    }

    #[test]
    fn target_examples() {
        let one = Complex64::new(1.0, 0.0);
        for alpha in [Complex64::new(-1.0, 0.0), I, Complex64::from_polar(1.0, -2.0)] {
            let m = DiskMap::target(alpha, one).unwrap();
            assert!(close(m.apply(ExtComplex::real(0.0)), alpha));
            assert!(close(m.apply(ExtComplex::Infinity), one));
            assert!(m.center().im > 0.0);
        }
        let m = DiskMap::target(Complex64::new(-1.0, 0.0), one).unwrap();
        assert!((m.center() - I).norm() < 1e-15);
        assert!(DiskMap::target(one, one).is_err());
    }
}
