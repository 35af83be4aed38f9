//! Kreĭn factors `p_J` and Kreĭn products `k_O`.
//!
//! For an arc `J = (b, a)` the factor `p_J` is the fractional-linear self-map
//! of ℂ⁺ that is negative exactly on `J`, has its zero at `a`, its pole at
//! `b` and satisfies `|p_J(i)| = 1`. The product over the components of an
//! open set `O` is evaluated as `exp(Σ log p_J)`, every summand having
//! imaginary part in `(0, π)`.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::extreal::{Arc, ArcGenerator, ArcSet, CantorComplement, ExtComplex, ExtPoint, CANTOR_MAX_LEVEL};
use crate::moebius::HalfPlaneAuto;
use crate::numeric::integrate;
use crate::{Error, Result};

/// Distance to an isolated pole below which evaluation reports `∞`.
pub const POLE_GUARD: f64 = 1e-9;

/// A single factor: the arc `J`, or one of the set-level values `∅`, `ℝ∪{∞}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KreinFactor {
    Empty,
    Full,
    Arc(Arc),
}

impl From<Arc> for KreinFactor {
    fn from(a: Arc) -> Self {
        KreinFactor::Arc(a)
    }
}

impl KreinFactor {
    /// Closed-form value; the pole evaluates to `∞`.
    pub fn eval(&self, z: ExtComplex) -> ExtComplex {
        match self {
            KreinFactor::Empty => ExtComplex::real(1.0),
            KreinFactor::Full => ExtComplex::real(-1.0),
            KreinFactor::Arc(j) => p_eval(j, z),
        }
    }

    /// Principal logarithm on ℂ⁺.
    pub fn log(&self, z: Complex64) -> Complex64 {
        match self {
            KreinFactor::Empty => Complex64::new(0.0, 0.0),
            KreinFactor::Full => Complex64::new(0.0, PI),
            KreinFactor::Arc(j) => log_p(j, z),
        }
    }
}

fn norm_i(t: f64) -> f64 {
    t.hypot(1.0)
}

/// `p_J(z)`.
pub fn p_eval(j: &Arc, z: ExtComplex) -> ExtComplex {
    let (b, a) = j.raw();
    if j.is_punctured() {
        return ExtComplex::real(-1.0);
    }
    let z = match z {
        ExtComplex::Infinity => {
            return match (b.is_finite(), a.is_finite()) {
                (true, true) => {
                    let k = norm_i(b) / norm_i(a);
                    ExtComplex::real(if j.wraps() { -k } else { k })
                }
                (false, _) => ExtComplex::Infinity,
                (_, false) => ExtComplex::real(0.0),
            };
        }
        ExtComplex::Finite(z) => z,
    };
    if b.is_finite() && z == Complex64::new(b, 0.0) {
        return ExtComplex::Infinity;
    }
    let v = match (b.is_finite(), a.is_finite()) {
        (true, true) => {
            let v = (z - a) / (z - b) * (norm_i(b) / norm_i(a));
            if j.wraps() {
                -v
            } else {
                v
            }
        }
        (false, _) => (z - a) / norm_i(a),
        (_, false) => -norm_i(b) / (z - b),
    };
    ExtComplex::Finite(v)
}

/// `ln |p_J(z)|` for `z` off the endpoints.
fn log_abs(j: &Arc, z: Complex64) -> f64 {
    if j.is_punctured() {
        return 0.0;
    }
    let (b, a) = j.raw();
    let mut s = 0.0;
    if a.is_finite() {
        s += (z - a).norm().ln() - 0.5 * (1.0 + a * a).ln();
    }
    if b.is_finite() {
        s += 0.5 * (1.0 + b * b).ln() - (z - b).norm().ln();
    }
    s
}

/// Principal `log p_J(z)` for `Im z > 0`.
pub fn log_p(j: &Arc, z: Complex64) -> Complex64 {
    Complex64::new(log_abs(j, z), j.angle_at(z))
}

/// Value of `p_J` at a real point (or `∞`) as `c · u^order` in the local
/// coordinate `u = x − p` (`u = 1/z` at `∞`), split as `ln|c|` and sign.
#[derive(Debug, Clone, Copy, PartialEq)]
struct RealLog {
    order: i32,
    ln_abs: f64,
    negative: bool,
}

fn real_log(j: &Arc, p: ExtPoint) -> RealLog {
    let value = |c: f64, order: i32| RealLog { order, ln_abs: c.abs().ln(), negative: c < 0.0 };
    if j.is_punctured() {
        return value(-1.0, 0);
    }
    let (b, a) = j.raw();
    let s = if j.wraps() { -1.0 } else { 1.0 };
    let kappa = norm_i(b) / norm_i(a);
    if p.same(j.a()) {
        return match (b.is_finite(), a.is_finite()) {
            (true, true) => value(s * kappa / (a - b), 1),
            (false, _) => value(1.0 / norm_i(a), 1),
            (_, false) => value(-norm_i(b), 1),
        };
    }
    if p.same(j.b()) {
        return match (b.is_finite(), a.is_finite()) {
            (true, true) => value(s * kappa * (b - a), -1),
            (false, _) => value(1.0 / norm_i(a), -1),
            (_, false) => value(-norm_i(b), -1),
        };
    }
    let negative = j.contains(p);
    match p {
        ExtPoint::Finite(x) => RealLog { order: 0, ln_abs: log_abs(j, Complex64::new(x, 0.0)), negative },
        ExtPoint::Infinity => RealLog { order: 0, ln_abs: 0.5 * ((1.0 + b * b).ln() - (1.0 + a * a).ln()), negative },
    }
}

/// Value of a product together with its certified truncation bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KreinValue {
    pub value: ExtComplex,
    /// Bound on `|k_O(z) − value|`.
    pub tail_bound: f64,
    /// Number of factors multiplied.
    pub factors: usize,
}

/// `k_O` for an explicit set or an arc generator, with a truncation policy.
#[derive(Debug, Clone, PartialEq)]
pub struct KreinProduct {
    source: ArcGenerator,
    max_factors: usize,
    tol: f64,
}

/// Default cap on the number of enumerated factors.
pub const DEFAULT_MAX_FACTORS: usize = 1 << 22;

impl KreinProduct {
    pub fn new(source: ArcGenerator) -> Self {
        KreinProduct { source, max_factors: DEFAULT_MAX_FACTORS, tol: 1e-12 }
    }

    pub fn explicit(set: ArcSet) -> Self {
        KreinProduct::new(ArcGenerator::Explicit(set))
    }

    pub fn cantor(c: CantorComplement) -> Self {
        KreinProduct::new(ArcGenerator::CantorComplement(c))
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_max_factors(mut self, n: usize) -> Self {
        self.max_factors = n;
        self
    }

    pub fn source(&self) -> &ArcGenerator {
        &self.source
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn max_factors(&self) -> usize {
        self.max_factors
    }

    /// `k_O(z)` for `z ∈ ℂ⁺`, or for real `z` (and `∞`) off the singular set.
    ///
    /// Explicit sets are multiplied out completely. Generators are enumerated
    /// level by level until the tail bound drops below the tolerance;
    /// exceeding the factor cap yields [`Error::TailNotCertified`].
    pub fn eval(&self, z: ExtComplex) -> Result<KreinValue> {
        match &self.source {
            ArcGenerator::Explicit(set) => eval_explicit(set, z),
            ArcGenerator::CantorComplement(c) => self.eval_cantor(c, z, None),
        }
    }

    /// Cantor products truncated after exactly `levels` levels, with the
    /// bound on the omitted remainder. Explicit sets ignore `levels`.
    pub fn eval_truncated(&self, z: ExtComplex, levels: u32) -> Result<KreinValue> {
        match &self.source {
            ArcGenerator::Explicit(set) => eval_explicit(set, z),
            ArcGenerator::CantorComplement(c) => self.eval_cantor(c, z, Some(levels)),
        }
    }

    fn eval_cantor(&self, c: &CantorComplement, z: ExtComplex, fixed: Option<u32>) -> Result<KreinValue> {
        let point = classify(z)?;
        if let Point::Real(ExtPoint::Finite(x)) = point {
            let d = c.distance_to_stage(Complex64::new(x, 0.0), CANTOR_MAX_LEVEL);
            if c.depth.is_none() && d < POLE_GUARD {
                return Err(Error::NearSingularSet { distance: d });
            }
        }
        let mut acc = Accumulator::new(point);
        if let Some(e) = c.exterior_arc() {
            acc.add(&e);
        }
        let g_max = max_t_over_one_plus_t2(c.lo, c.hi);
        let mut level = 0u32;
        loop {
            let bound = acc.tail_bound(c.remaining_length(level), c, level, g_max);
            let exhausted = !c.has_level(level + 1);
            let done = match fixed {
                Some(m) => level >= m || exhausted,
                None => exhausted || bound <= self.tol,
            };
            if done {
                return acc.finish(if exhausted { 0.0 } else { bound });
            }
            let next = 1usize << level;
            if acc.factors + next > self.max_factors {
                return Err(Error::TailNotCertified { bound, tol: self.tol, factors: acc.factors });
            }
            level += 1;
            for arc in c.level_arcs(level) {
                acc.add(&arc);
            }
        }
    }
}

/// `max |t|/(1+t²)` over `[lo, hi]`.
fn max_t_over_one_plus_t2(lo: f64, hi: f64) -> f64 {
    let g = |t: f64| t.abs() / (1.0 + t * t);
    let mut m = g(lo).max(g(hi));
    if (lo..=hi).contains(&1.0) || (lo..=hi).contains(&-1.0) {
        m = 0.5;
    }
    m
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Point {
    Upper(Complex64),
    Real(ExtPoint),
}

fn classify(z: ExtComplex) -> Result<Point> {
    match z {
        ExtComplex::Infinity => Ok(Point::Real(ExtPoint::Infinity)),
        ExtComplex::Finite(z) if !(z.re.is_finite() && z.im.is_finite()) => {
            Err(Error::InvalidInput("non-finite evaluation point".into()))
        }
        ExtComplex::Finite(z) if z.im > 0.0 => Ok(Point::Upper(z)),
        ExtComplex::Finite(z) if z.im == 0.0 => Ok(Point::Real(ExtPoint::Finite(z.re))),
        ExtComplex::Finite(_) => Err(Error::InvalidInput("evaluation point below the real axis".into())),
    }
}

/// Running sum of logarithms in fixed enumeration order.
struct Accumulator {
    point: Point,
    log: Complex64,
    negative: bool,
    order: i32,
    singular: bool,
    factors: usize,
}

impl Accumulator {
    fn new(point: Point) -> Self {
        Accumulator { point, log: Complex64::new(0.0, 0.0), negative: false, order: 0, singular: false, factors: 0 }
    }

    fn add(&mut self, arc: &Arc) {
        self.factors += 1;
        match self.point {
            Point::Upper(z) => self.log += log_p(arc, z),
            Point::Real(p) => {
                let r = real_log(arc, p);
                self.order += r.order;
                self.singular |= r.order != 0;
                self.log.re += r.ln_abs;
                self.negative ^= r.negative;
            }
        }
    }

    fn magnitude(&self) -> f64 {
        self.log.re.exp()
    }

    /// Bound on `|k − partial|` when the remaining arcs lie in the stage
    /// set `C_m` and have total length `remaining`.
    fn tail_bound(&self, remaining: f64, c: &CantorComplement, m: u32, g_max: f64) -> f64 {
        if remaining == 0.0 {
            return 0.0;
        }
        let inv_dist = match self.point {
            Point::Upper(z) => 1.0 / c.distance_to_stage(z, m),
            Point::Real(ExtPoint::Finite(x)) => 1.0 / c.distance_to_stage(Complex64::new(x, 0.0), m),
            Point::Real(ExtPoint::Infinity) => 0.0,
        };
        let r = remaining * (inv_dist + g_max);
        if !r.is_finite() || self.singular {
            return f64::INFINITY;
        }
        self.magnitude() * r.exp_m1()
    }

    fn finish(self, tail: f64) -> Result<KreinValue> {
        let rounding = 4.0 * f64::EPSILON * (self.factors as f64 + 1.0);
        let value = match self.point {
            Point::Upper(_) => ExtComplex::Finite(self.log.exp()),
            Point::Real(_) => {
                if self.order < 0 {
                    ExtComplex::Infinity
                } else if self.order > 0 {
                    ExtComplex::real(0.0)
                } else {
                    let m = self.magnitude();
                    ExtComplex::real(if self.negative { -m } else { m })
                }
            }
        };
        let scale = value.finite().map_or(0.0, |v| v.norm());
        Ok(KreinValue { value, tail_bound: tail + rounding * scale, factors: self.factors })
    }
}

fn eval_explicit(set: &ArcSet, z: ExtComplex) -> Result<KreinValue> {
    let point = classify(z)?;
    if set.is_full() {
        return Ok(KreinValue { value: ExtComplex::real(-1.0), tail_bound: 0.0, factors: 1 });
    }
    if let Point::Real(ExtPoint::Finite(x)) = point {
        // guard around isolated poles
        for arc in set.arcs() {
            if let ExtPoint::Finite(b) = arc.b() {
                if (x - b).abs() <= POLE_GUARD && !arc.is_punctured() && !set.arcs().iter().any(|o| o.a().same(arc.b())) {
                    return Ok(KreinValue { value: ExtComplex::Infinity, tail_bound: 0.0, factors: set.len() });
                }
            }
        }
    }
    let mut acc = Accumulator::new(point);
    for arc in set.arcs() {
        acc.add(arc);
    }
    acc.finish(0.0)
}

/// `k_O(z) = exp ∫_O (1 + tz)/(t − z) dt/(1 + t²)` by adaptive quadrature.
///
/// With `t = tan θ` each arc becomes a bounded θ-interval and the integrand
/// `(cos θ + z sin θ)/(sin θ − z cos θ)` is smooth for `Im z > 0`.
pub fn k_integral_eval(set: &ArcSet, z: Complex64, tol: f64) -> Result<Complex64> {
    if !(z.im > 0.0) {
        return Err(Error::InvalidInput("integral form needs Im z > 0".into()));
    }
    if set.is_full() {
        return Ok(Complex64::new(-1.0, 0.0));
    }
    let integrand = |th: f64| {
        let (s, c) = th.sin_cos();
        (z * s + c) / (-z * c + s)
    };
    let mut v = Complex64::new(0.0, 0.0);
    for arc in set.arcs() {
        let (b, a) = arc.raw();
        let lo = b.atan();
        let mut hi = a.atan();
        if arc.wraps() {
            hi += PI;
        }
        let (part, _) = integrate(integrand, lo, hi, tol, tol)?;
        v += part;
    }
    Ok(v.exp())
}

/// Zero/pole structure of `k_O` for a regular set `O`.
#[derive(Debug, Clone, PartialEq)]
pub struct KreinStructure {
    /// Closed support of the representing measure together with `∞` when
    /// it carries mass.
    pub sigma: Vec<ExtPoint>,
    pub gamma: ArcSet,
    pub zeros: Vec<ExtPoint>,
    pub poles: Vec<ExtPoint>,
}

/// Support, negativity set, zeros and poles of `k_O`.
///
/// `∞` may be both a left and a right endpoint (arcs `(−∞, a)` and `(b, ∞)`);
/// the simple pole and zero there cancel and `∞` is dropped from every list.
pub fn k_structure(set: &ArcSet) -> Result<KreinStructure> {
    if !set.is_regular() {
        return Err(Error::NotRegular);
    }
    let lefts = set.left_endpoints();
    let rights = set.right_endpoints();
    let cancelled = |p: &ExtPoint| lefts.iter().any(|l| l.same(*p)) && rights.iter().any(|r| r.same(*p));
    let sigma: Vec<ExtPoint> = lefts.iter().copied().filter(|p| !cancelled(p)).collect();
    let zeros: Vec<ExtPoint> = rights.iter().copied().filter(|p| !cancelled(p)).collect();
    Ok(KreinStructure { poles: sigma.clone(), sigma, gamma: set.clone(), zeros })
}

/// `(φ⁻¹(O), c)` with `k_{φ⁻¹(O)} = c · k_O ∘ φ`.
pub fn equivariance_transport(set: &ArcSet, phi: &HalfPlaneAuto) -> Result<(ArcSet, f64)> {
    let at = phi.apply(Complex64::new(0.0, 1.0));
    let v = eval_explicit(set, at)?;
    let m = v.value.finite().map(|v| v.norm()).unwrap_or(0.0);
    if !(m > 0.0 && m.is_finite()) {
        return Err(Error::NonConvergence("equivariance constant"));
    }
    Ok((phi.pullback_arcset(set), 1.0 / m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use ExtPoint::{Finite as F, Infinity as Inf};

    const I: Complex64 = Complex64::new(0.0, 1.0);

    fn arc(b: f64, a: f64) -> Arc {
        Arc::finite(b, a).unwrap()
    }

    fn val(v: ExtComplex) -> Complex64 {
        v.finite().unwrap()
    }

    #[test]
    fn factor_examples() {
        let v = val(p_eval(&arc(0.0, 1.0), ExtComplex::real(0.5)));
        assert!(v.re < 0.0 && v.im == 0.0);
        let left = Arc::new(Inf, F(0.0)).unwrap();
        assert_eq!(val(p_eval(&left, ExtComplex::real(3.0))), Complex64::new(3.0, 0.0));
        let right = Arc::new(F(0.0), Inf).unwrap();
        let z = Complex64::new(0.3, 0.8);
        assert!((val(p_eval(&right, ExtComplex::Finite(z))) + 1.0 / z).norm() < 1e-15);
        assert_eq!(p_eval(&arc(0.0, 1.0), ExtComplex::real(0.0)), ExtComplex::Infinity);
        assert_eq!(KreinFactor::Empty.eval(ExtComplex::Finite(z)), ExtComplex::real(1.0));
        assert_eq!(KreinFactor::Full.eval(ExtComplex::Finite(z)), ExtComplex::real(-1.0));
    }

    #[test]
    fn wrap_factor_is_reciprocal_of_complement() {
        let z = Complex64::new(-0.4, 0.6);
        let w = val(p_eval(&arc(2.0, -1.0), ExtComplex::Finite(z)));
        let inner = val(p_eval(&arc(-1.0, 2.0), ExtComplex::Finite(z)));
        assert!((w + 1.0 / inner).norm() < 1e-14);
    }

    #[test]
    fn log_examples() {
        assert!((log_p(&arc(-1.0, 1.0), I).im - PI / 2.0).abs() < 1e-15);
        assert_eq!(KreinFactor::Empty.log(I), Complex64::new(0.0, 0.0));
        let z = Complex64::new(0.0, 2.0);
        let o = ArcSet::single(arc(0.0, 1.0));
        assert!((log_p(&arc(0.0, 1.0), z).im - o.angle_subtended(z)).abs() < 1e-15);
        // closed-form antiderivative
        let (a, b) = (1.0f64, 0.0f64);
        let want = ((a - z) / (b - z)).ln() - 0.5 * ((1.0 + a * a) / (1.0 + b * b)).ln();
        assert!((log_p(&arc(0.0, 1.0), z) - want).norm() < 1e-15);
    }

    #[test]
    fn merging_identity() {
        let k = KreinProduct::explicit(ArcSet::normalize([arc(1.0, 2.0), arc(2.0, 3.0)]));
        let v = val(k.eval(ExtComplex::Finite(I)).unwrap().value);
        let p = val(p_eval(&arc(1.0, 3.0), ExtComplex::Finite(I)));
        assert!((v - p).norm() < 1e-12);
    }

    #[test]
    fn full_is_minus_one() {
        let k = KreinProduct::explicit(ArcSet::full());
        assert_eq!(k.eval(ExtComplex::Finite(I)).unwrap().value, ExtComplex::real(-1.0));
    }

    #[test]
    fn cantor_product_tends_to_minus_one() {
        let c = CantorComplement::new(0.0, 1.0, None, true).unwrap();
        let k = KreinProduct::cantor(c).with_tol(1e-2);
        let v = k.eval(ExtComplex::Finite(I)).unwrap();
        let err = (val(v.value) + 1.0).norm();
        assert!(err <= v.tail_bound, "err {err} bound {}", v.tail_bound);
        assert!(v.tail_bound <= 1e-2);
    }

    #[test]
    fn cantor_tail_not_certified_under_cap() {
        let c = CantorComplement::new(0.0, 1.0, None, false).unwrap();
        let k = KreinProduct::cantor(c).with_tol(1e-12).with_max_factors(1000);
        assert!(matches!(k.eval(ExtComplex::Finite(I)), Err(Error::TailNotCertified { .. })));
    }

    #[test]
    fn real_evaluation_signs() {
        let o = ArcSet::normalize([arc(0.0, 1.0), arc(2.0, 3.0)]);
        let k = KreinProduct::explicit(o);
        let at = |x: f64| val(k.eval(ExtComplex::real(x)).unwrap().value).re;
        assert!(at(0.5) < 0.0 && at(2.5) < 0.0);
        assert!(at(1.5) > 0.0 && at(-1.0) > 0.0 && at(4.0) > 0.0);
        assert_eq!(k.eval(ExtComplex::real(1.0)).unwrap().value, ExtComplex::real(0.0));
        assert_eq!(k.eval(ExtComplex::real(2.0 + 1e-10)).unwrap().value, ExtComplex::Infinity);
        // independent: product of closed forms
        let x = 1.7;
        let want = val(p_eval(&arc(0.0, 1.0), ExtComplex::real(x))) * val(p_eval(&arc(2.0, 3.0), ExtComplex::real(x)));
        assert!((at(x) - want.re).abs() < 1e-14);
        let inf = val(k.eval(ExtComplex::Infinity).unwrap().value).re;
        let want = val(p_eval(&arc(0.0, 1.0), ExtComplex::Infinity)) * val(p_eval(&arc(2.0, 3.0), ExtComplex::Infinity));
        assert!((inf - want.re).abs() < 1e-14);
    }

    #[test]
    fn integral_examples() {
        let o = ArcSet::single(arc(0.0, 1.0));
        let v = k_integral_eval(&o, I, 1e-13).unwrap();
        assert!((v - val(p_eval(&arc(0.0, 1.0), ExtComplex::Finite(I)))).norm() < 1e-8);
        assert!((k_integral_eval(&ArcSet::empty(), I, 1e-13).unwrap() - 1.0).norm() < 1e-15);
        let v = k_integral_eval(&ArcSet::single(arc(-1.0, 1.0)), I, 1e-13).unwrap();
        assert!((v.arg() - PI / 2.0).abs() < 1e-8);
        let w = ArcSet::single(arc(1.0, -2.0));
        let z = Complex64::new(0.4, 0.3);
        let v = k_integral_eval(&w, z, 1e-13).unwrap();
        assert!((v - val(p_eval(&arc(1.0, -2.0), ExtComplex::Finite(z)))).norm() < 1e-8);
    }

    #[test]
    fn structure_examples() {
        let s = k_structure(&ArcSet::single(arc(2.0, 5.0))).unwrap();
        assert_eq!((s.sigma, s.zeros, s.poles), (vec![F(2.0)], vec![F(5.0)], vec![F(2.0)]));
        let bad = ArcSet::normalize([arc(0.0, 1.0), arc(1.0, 2.0)]);
        assert_eq!(k_structure(&bad), Err(Error::NotRegular));
        let s = k_structure(&ArcSet::normalize([arc(0.0, 1.0), arc(2.0, 3.0)])).unwrap();
        assert_eq!(s.zeros, [F(1.0), F(3.0)]);
        assert_eq!(s.poles, [F(0.0), F(2.0)]);
    }

    #[test]
    fn structure_cancels_at_infinity() {
        let o = ArcSet::normalize([Arc::new(Inf, F(0.0)).unwrap(), Arc::new(F(1.0), Inf).unwrap()]);
        let s = k_structure(&o).unwrap();
        assert_eq!(s.sigma, [F(1.0)]);
        assert_eq!(s.zeros, [F(0.0)]);
        let v = KreinProduct::explicit(o).eval(ExtComplex::Infinity).unwrap().value;
        assert!(val(v).re < 0.0);
    }

    #[test]
    fn equivariance_examples() {
        let o = ArcSet::single(arc(0.0, 1.0));
        let (same, c) = equivariance_transport(&o, &HalfPlaneAuto::identity()).unwrap();
        assert_eq!(same, o);
        assert!((c - 1.0).abs() < 1e-15);
        let (_, c) = equivariance_transport(&o, &HalfPlaneAuto::translation(1.0)).unwrap();
        let want = 1.0 / val(p_eval(&arc(0.0, 1.0), ExtComplex::Finite(Complex64::new(1.0, 1.0)))).norm();
        assert!((c - want).abs() < 1e-15);
        let phi = HalfPlaneAuto::inversion();
        let (o2, c) = equivariance_transport(&o, &phi).unwrap();
        for z in [Complex64::new(0.3, 0.2), Complex64::new(-2.0, 1.5), Complex64::new(5.0, 0.1), Complex64::new(0.0, 3.0), Complex64::new(-0.7, 0.9)] {
            let lhs = val(KreinProduct::explicit(o2.clone()).eval(ExtComplex::Finite(z)).unwrap().value);
            let rhs = val(KreinProduct::explicit(o.clone()).eval(phi.apply(z)).unwrap().value) * c;
            assert!((lhs - rhs).norm() < 1e-10);
        }
    }
}
