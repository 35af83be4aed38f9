//! Nevanlinna representations `f(z) = αz + β + ∫ (1 + zt)/(t − z) dρ(t)`.
//!
//! Measures are finite sums of atoms, constant densities on bounded
//! intervals and an optional atomic stand-in for the Cantor measure.

mod analyze;
mod boole;
mod recover;

pub use analyze::{analyze, negativity_set, support, AnalysisResult, ClosedSet};
pub(crate) use analyze::theta_range;
pub use boole::{boole_superlevel_measure, cauchy_transform, letac_preimage_length, Superlevel};
pub use recover::{
    recover_alpha, recover_atom, recover_beta, stieltjes_density, stieltjes_density_limit, ALPHA_LADDER,
};

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::extreal::ExtComplex;
use crate::numeric::same_point;
use crate::{Error, Result};

/// Constant density `d` on `[l, r]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AcPiece {
    pub l: f64,
    pub r: f64,
    pub density: f64,
}

impl AcPiece {
    pub fn mass(&self) -> f64 {
        self.density * (self.r - self.l)
    }

    /// `∫_l^r (1 + zt)/(t − z) dt = z(r − l) + (1 + z²) log((r − z)/(l − z))`.
    fn kernel_integral(&self, z: Complex64) -> Complex64 {
        if let Some((s, _)) = self.far_field(z) {
            return -(self.r * self.r - self.l * self.l) / 2.0 - s;
        }
        let log = (Complex64::new(self.r, 0.0) - z).ln() - (Complex64::new(self.l, 0.0) - z).ln();
        z * (self.r - self.l) + (z * z + 1.0) * log
    }

    fn kernel_derivative(&self, z: Complex64) -> Complex64 {
        if let Some((_, ds)) = self.far_field(z) {
            return ds;
        }
        let rz = Complex64::new(self.r, 0.0) - z;
        let lz = Complex64::new(self.l, 0.0) - z;
        let log = rz.ln() - lz.ln();
        Complex64::new(self.r - self.l, 0.0) + z * 2.0 * log + (z * z + 1.0) * (lz.inv() - rz.inv())
    }

    /// Far from the piece the closed form cancels catastrophically; there
    /// `∫ (1 + t²)/(z − t) dt = Σ m_n z^{−n−1}` with `m_n = ∫ (1 + t²) tⁿ dt`
    /// is summed instead, returning it with the derivative of its negative.
    fn far_field(&self, z: Complex64) -> Option<(Complex64, Complex64)> {
        let reach = self.l.abs().max(self.r.abs()).max(1.0);
        if z.norm() <= 4.0 * reach {
            return None;
        }
        let inv = z.inv();
        let mut zpow = inv;
        let mut sum = Complex64::new(0.0, 0.0);
        let mut dsum = Complex64::new(0.0, 0.0);
        let (mut l1, mut r1) = (self.l, self.r);
        let (mut l3, mut r3) = (self.l.powi(3), self.r.powi(3));
        for n in 0..200 {
            let k = n as f64;
            let m = (r1 - l1) / (k + 1.0) + (r3 - l3) / (k + 3.0);
            let term = zpow * m;
            sum += term;
            dsum += term * inv * (k + 1.0);
            if term.norm() <= 1e-18 * sum.norm() {
                break;
            }
            zpow *= inv;
            l1 *= self.l;
            r1 *= self.r;
            l3 *= self.l;
            r3 *= self.r;
        }
        Some((sum, dsum))
    }
}

/// Largest supported Cantor approximation depth (`2^k` atoms).
pub const MAX_CANTOR_DEPTH: u32 = 20;

/// Finite positive Borel measure on ℝ.
#[derive(Debug, Clone, PartialEq)]
pub struct Measure {
    atoms: Vec<(f64, f64)>,
    ac: Vec<AcPiece>,
    cantor_depth: Option<u32>,
    /// Explicit atoms merged with the Cantor atoms, sorted by location.
    all_atoms: Vec<(f64, f64)>,
}

impl Default for Measure {
    fn default() -> Self {
        Measure::zero()
    }
}

impl Measure {
    pub fn zero() -> Self {
        Measure { atoms: Vec::new(), ac: Vec::new(), cantor_depth: None, all_atoms: Vec::new() }
    }

    /// Validates positivity, distinct atoms and disjoint density pieces.
    /// `cantor_depth = k` adds `2^k` atoms of mass `2^{−k}` at the midpoints
    /// of the stage-`k` intervals of the Cantor construction on `[0, 1]`.
    pub fn new(atoms: Vec<(f64, f64)>, ac: Vec<AcPiece>, cantor_depth: Option<u32>) -> Result<Self> {
        for &(t, w) in &atoms {
            if !t.is_finite() || !(w > 0.0) || !w.is_finite() {
                return Err(Error::InvalidInput("atoms need finite location and positive weight".into()));
            }
        }
        let mut ac_sorted = ac.clone();
        ac_sorted.sort_by(|x, y| x.l.total_cmp(&y.l));
        for p in &ac_sorted {
            if !(p.l.is_finite() && p.r.is_finite() && p.l < p.r) || !(p.density >= 0.0) || !p.density.is_finite() {
                return Err(Error::InvalidInput("density pieces need l < r and density >= 0".into()));
            }
        }
        for w in ac_sorted.windows(2) {
            if w[1].l < w[0].r && !same_point(w[1].l, w[0].r) {
                return Err(Error::Overlap);
            }
        }
        if cantor_depth.is_some_and(|k| k > MAX_CANTOR_DEPTH) {
            return Err(Error::InvalidInput("cantor depth too large".into()));
        }
        let mut all = atoms.clone();
        if let Some(k) = cantor_depth {
            all.extend(cantor_atoms(k));
        }
        all.sort_by(|x, y| x.0.total_cmp(&y.0));
        for w in all.windows(2) {
            if same_point(w[0].0, w[1].0) {
                return Err(Error::InvalidInput("atoms must be distinct".into()));
            }
        }
        Ok(Measure { atoms, ac, cantor_depth, all_atoms: all })
    }

    pub fn atomic(atoms: Vec<(f64, f64)>) -> Result<Self> {
        Measure::new(atoms, Vec::new(), None)
    }

    /// Explicitly listed atoms (without the Cantor stand-in).
    pub fn explicit_atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    /// All atoms including the Cantor stand-in, sorted.
    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.all_atoms
    }

    pub fn ac_pieces(&self) -> &[AcPiece] {
        &self.ac
    }

    pub fn cantor_depth(&self) -> Option<u32> {
        self.cantor_depth
    }

    pub fn is_atomic(&self) -> bool {
        self.ac.iter().all(|p| p.density == 0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.all_atoms.is_empty() && self.is_atomic()
    }

    pub fn total_mass(&self) -> f64 {
        self.all_atoms.iter().map(|a| a.1).sum::<f64>() + self.ac.iter().map(AcPiece::mass).sum::<f64>()
    }

    /// Support pieces of positive density.
    pub(crate) fn active_ac(&self) -> impl Iterator<Item = &AcPiece> {
        self.ac.iter().filter(|p| p.density > 0.0)
    }

    /// Whether the real point `x` lies on a closed density piece.
    pub(crate) fn on_ac_support(&self, x: f64) -> bool {
        self.active_ac().any(|p| x >= p.l && x <= p.r)
    }

    pub(crate) fn atom_at(&self, x: f64) -> bool {
        self.all_atoms.iter().any(|a| same_point(a.0, x))
    }
}

fn cantor_atoms(k: u32) -> impl Iterator<Item = (f64, f64)> {
    let n = 1u64 << k;
    let width = 1.0 / 3f64.powi(k as i32);
    let w = 1.0 / n as f64;
    (0..n).map(move |i| {
        let mut num = 0u64;
        for j in 0..k {
            num *= 3;
            if (i >> (k - 1 - j)) & 1 == 1 {
                num += 2;
            }
        }
        ((num as f64 + 0.5) * width, w)
    })
}

/// `f(z) = αz + β + ∫ (1 + zt)/(t − z) dρ(t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct NevanlinnaRep {
    pub alpha: f64,
    pub beta: f64,
    pub rho: Measure,
}

impl NevanlinnaRep {
    pub fn new(alpha: f64, beta: f64, rho: Measure) -> Result<Self> {
        if !(alpha >= 0.0) || !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::InvalidInput("need alpha >= 0 and finite beta".into()));
        }
        Ok(NevanlinnaRep { alpha, beta, rho })
    }

    /// `αz + β` with no measure.
    pub fn linear(alpha: f64, beta: f64) -> Result<Self> {
        NevanlinnaRep::new(alpha, beta, Measure::zero())
    }

    /// Value on ℂ⁺, or at real points off the support. Atoms evaluate to `∞`;
    /// real points on a density piece are rejected (see
    /// [`NevanlinnaRep::boundary_value`]).
    pub fn eval(&self, z: Complex64) -> Result<ExtComplex> {
        if z.im < 0.0 || !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::InvalidInput("evaluation point must lie in the closed upper half-plane".into()));
        }
        if z.im == 0.0 {
            if self.rho.atom_at(z.re) {
                return Ok(ExtComplex::Infinity);
            }
            if self.rho.on_ac_support(z.re) {
                return Err(Error::OnSupport(z.re));
            }
        }
        Ok(ExtComplex::Finite(self.eval_unchecked(z)))
    }

    fn eval_unchecked(&self, z: Complex64) -> Complex64 {
        let mut v = z * self.alpha + self.beta;
        for &(t, w) in self.rho.atoms() {
            v += (z * t + 1.0) / (Complex64::new(t, 0.0) - z) * w;
        }
        for p in self.rho.active_ac() {
            v += p.kernel_integral(z) * p.density;
        }
        v
    }

    /// Value on the extended plane, including `z = ∞`.
    pub fn eval_ext(&self, z: ExtComplex) -> Result<ExtComplex> {
        match z {
            ExtComplex::Finite(z) => self.eval(z),
            ExtComplex::Infinity => Ok(self.value_at_infinity().map_or(ExtComplex::Infinity, ExtComplex::real)),
        }
    }

    /// Boundary value `lim f(x + iε)`, which exists on density pieces too.
    pub fn boundary_value(&self, x: f64) -> Result<ExtComplex> {
        if self.rho.atom_at(x) {
            return Ok(ExtComplex::Infinity);
        }
        let mut v = Complex64::new(self.alpha * x + self.beta, 0.0);
        let z = Complex64::new(x, 0.0);
        for &(t, w) in self.rho.atoms() {
            v += w * (1.0 + x * t) / (t - x);
        }
        for p in self.rho.active_ac() {
            if same_point(x, p.l) || same_point(x, p.r) {
                return Err(Error::OnSupport(x));
            }
            if x > p.l && x < p.r {
                let log = Complex64::new(((p.r - x) / (x - p.l)).ln(), core::f64::consts::PI);
                v += (z * (p.r - p.l) + (z * z + 1.0) * log) * p.density;
            } else {
                v += p.kernel_integral(z) * p.density;
            }
        }
        Ok(ExtComplex::Finite(v))
    }

    /// `f'(z) = α + ∫ (1 + t²)/(t − z)² dρ(t)`.
    pub fn derivative(&self, z: Complex64) -> Result<ExtComplex> {
        if let ExtComplex::Infinity = self.eval(z)? {
            return Ok(ExtComplex::Infinity);
        }
        let mut v = Complex64::new(self.alpha, 0.0);
        for &(t, w) in self.rho.atoms() {
            let d = Complex64::new(t, 0.0) - z;
            v += w * (1.0 + t * t) / (d * d);
        }
        for p in self.rho.active_ac() {
            v += p.kernel_derivative(z) * p.density;
        }
        Ok(ExtComplex::Finite(v))
    }

    /// `f(∞)` when `α = 0` (the support is always bounded here).
    pub fn value_at_infinity(&self) -> Option<f64> {
        if self.alpha > 0.0 {
            return None;
        }
        let atoms: f64 = self.rho.atoms().iter().map(|&(t, w)| w * t).sum();
        let ac: f64 = self.rho.active_ac().map(|p| p.density * (p.r * p.r - p.l * p.l) / 2.0).sum();
        Some(self.beta - atoms - ac)
    }

    /// Partial-fraction data `f = αz + C + Σ m_j/(t_j − z)` for atomic reps:
    /// `m_j = w_j (1 + t_j²)`, `C = β − Σ w_j t_j`.
    pub fn partial_fractions(&self) -> Option<(f64, f64, Vec<(f64, f64)>)> {
        if !self.rho.is_atomic() {
            return None;
        }
        let c = self.beta - self.rho.atoms().iter().map(|&(t, w)| w * t).sum::<f64>();
        let m = self.rho.atoms().iter().map(|&(t, w)| (t, w * (1.0 + t * t))).collect();
        Some((self.alpha, c, m))
    }

    /// Inverse of [`NevanlinnaRep::partial_fractions`].
    pub fn from_partial_fractions(alpha: f64, c: f64, residues: &[(f64, f64)]) -> Result<Self> {
        let atoms: Vec<(f64, f64)> = residues.iter().map(|&(t, m)| (t, m / (1.0 + t * t))).collect();
        let beta = c + atoms.iter().map(|&(t, w)| w * t).sum::<f64>();
        NevanlinnaRep::new(alpha, beta, Measure::atomic(atoms)?)
    }
}

/// `z + i`, whose measure is the Cauchy distribution.
pub fn z_plus_i(z: Complex64) -> Complex64 {
    z + Complex64::new(0.0, 1.0)
}

/// `z + √(z² − 1)` with the root positive for `z > 1`, computed as
/// `√(z − 1)·√(z + 1)` with principal roots.
pub fn z_plus_sqrt(z: Complex64) -> Complex64 {
    z + (z - 1.0).sqrt() * (z + 1.0).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    const I: Complex64 = Complex64::new(0.0, 1.0);

    fn val(v: Result<ExtComplex>) -> Complex64 {
        v.unwrap().finite().unwrap()
    }

    fn delta0() -> NevanlinnaRep {
        NevanlinnaRep::new(0.0, 0.0, Measure::atomic(vec![(0.0, 1.0)]).unwrap()).unwrap()
    }

    #[test]
    fn eval_examples() {
        let z = Complex64::new(0.3, 0.4);
        assert!((val(delta0().eval(z)) + 1.0 / z).norm() < 1e-15);
        assert_eq!(val(NevanlinnaRep::linear(1.0, 0.0).unwrap().eval(I)), I);
        assert_eq!(delta0().eval(Complex64::new(0.0, 0.0)).unwrap(), ExtComplex::Infinity);
    }

    #[test]
    fn truncated_cauchy_density_approaches_z_plus_i() {
        // density 1/(π(1+t²)) on [-L, L] in steps; agreement improves with L
        let mut pieces = Vec::new();
        let n = 4000;
        let l = 200.0;
        for k in 0..n {
            let a = -l + 2.0 * l * k as f64 / n as f64;
            let b = -l + 2.0 * l * (k + 1) as f64 / n as f64;
            let m = 0.5 * (a + b);
            pieces.push(AcPiece { l: a, r: b, density: 1.0 / (core::f64::consts::PI * (1.0 + m * m)) });
        }
        let rep = NevanlinnaRep::new(1.0, 0.0, Measure::new(vec![], pieces, None).unwrap()).unwrap();
        let z = Complex64::new(0.5, 1.0);
        assert!((val(rep.eval(z)) - z_plus_i(z)).norm() < 1e-2);
    }

    #[test]
    fn value_at_i_identity() {
        let rho = Measure::new(
            vec![(-2.0, 0.3), (1.5, 0.7)],
            vec![AcPiece { l: 3.0, r: 4.0, density: 0.25 }],
            Some(3),
        )
        .unwrap();
        let rep = NevanlinnaRep::new(0.5, -1.0, rho.clone()).unwrap();
        let want = Complex64::new(-1.0, 0.5 + rho.total_mass());
        assert!((val(rep.eval(I)) - want).norm() < 1e-13);
    }

    #[test]
    fn ac_piece_matches_quadrature() {
        let p = AcPiece { l: -0.5, r: 1.5, density: 1.0 };
        let z = Complex64::new(0.2, 0.3);
        let (q, _) = crate::numeric::integrate(|t| (z * t + 1.0) / (Complex64::new(t, 0.0) - z), p.l, p.r, 1e-14, 1e-14).unwrap();
        assert!((p.kernel_integral(z) - q).norm() < 1e-11);
    }

    #[test]
    fn derivative_examples() {
        let d = val(delta0().derivative(Complex64::new(2.0, 0.0)));
        assert!((d.re - 0.25).abs() < 1e-15 && d.im == 0.0);
        assert_eq!(val(NevanlinnaRep::linear(1.0, 3.0).unwrap().derivative(I)), Complex64::new(1.0, 0.0));
        let rep = NevanlinnaRep::new(
            0.2,
            0.1,
            Measure::new(vec![(-1.0, 0.4), (0.7, 1.1), (3.0, 0.2)], vec![AcPiece { l: 1.0, r: 2.0, density: 0.3 }], None).unwrap(),
        )
        .unwrap();
        let z = Complex64::new(0.0, 2.0);
        let h = 1e-5;
        let fd = (val(rep.eval(z + h)) - val(rep.eval(z - h))) / (2.0 * h);
        assert!((val(rep.derivative(z)) - fd).norm() < 1e-7);
    }

    #[test]
    fn infinity_value_matches_large_argument() {
        let rep = NevanlinnaRep::new(
            0.0,
            0.4,
            Measure::new(vec![(-1.0, 0.4), (2.0, 0.5)], vec![AcPiece { l: 0.0, r: 1.0, density: 2.0 }], None).unwrap(),
        )
        .unwrap();
        let far = val(rep.eval(Complex64::new(1e7, 0.0))).re;
        assert!((rep.value_at_infinity().unwrap() - far).abs() < 1e-5);
    }

    #[test]
    fn boundary_value_on_density() {
        let rep = NevanlinnaRep::new(0.0, 0.0, Measure::new(vec![], vec![AcPiece { l: 0.0, r: 1.0, density: 0.5 }], None).unwrap()).unwrap();
        let x = 0.3;
        let bv = rep.boundary_value(x).unwrap().finite().unwrap();
        let near = val(rep.eval(Complex64::new(x, 1e-9)));
        assert!((bv - near).norm() < 1e-6);
        assert!((bv.im / (core::f64::consts::PI * (1.0 + x * x)) - 0.5).abs() < 1e-14);
        assert!(matches!(rep.eval(Complex64::new(x, 0.0)), Err(Error::OnSupport(_))));
    }

    #[test]
    fn partial_fraction_round_trip() {
        let rep = NevanlinnaRep::new(1.5, 0.3, Measure::atomic(vec![(-1.0, 0.4), (2.0, 0.5)]).unwrap()).unwrap();
        let (a, c, m) = rep.partial_fractions().unwrap();
        let back = NevanlinnaRep::from_partial_fractions(a, c, &m).unwrap();
        let z = Complex64::new(0.1, 0.7);
        assert!((val(back.eval(z)) - val(rep.eval(z))).norm() < 1e-14);
    }

    #[test]
    fn cantor_atoms_are_midpoints() {
        let m = Measure::new(vec![], vec![], Some(2)).unwrap();
        let locs: Vec<f64> = m.atoms().iter().map(|a| a.0).collect();
        let want = [1.0 / 18.0, 5.0 / 18.0, 13.0 / 18.0, 17.0 / 18.0];
        for (x, y) in locs.iter().zip(want) {
            assert!((x - y).abs() < 1e-15);
        }
        assert!((m.total_mass() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn sqrt_branch() {
        let v = z_plus_sqrt(Complex64::new(2.0, 0.0));
        assert!((v.re - (2.0 + 3f64.sqrt())).abs() < 1e-15);
        let v = z_plus_sqrt(Complex64::new(-2.0, 0.0));
        assert!((v.re - (-2.0 - 3f64.sqrt())).abs() < 1e-15);
        let v = z_plus_sqrt(Complex64::new(0.5, 0.0));
        assert!((v.im - 0.75f64.sqrt()).abs() < 1e-15);
    }
}
