//! Factorization `f = k_{Γ(f)} · g` with `g` positive on `Ω(g)`.

mod exp;

pub use exp::{compose_in_class, exp_eval, psi_recover, ExpRep, PsiPiece};

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc as Shared;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::extreal::{Arc, ArcGenerator, ArcSet, ExtComplex, ExtPoint};
use crate::grid::{certification_grid, halton_box};
use crate::krein::{k_structure, KreinProduct};
use crate::nevanlinna::{analyze, negativity_set, support, theta_range, AnalysisResult, ClosedSet, NevanlinnaRep};
use crate::numeric::same_point;
use crate::{Error, Result};

/// Evaluator of a function known only through its values on `ℂ⁺` (and at
/// real points off its support).
pub type Evaluator = Shared<dyn Fn(Complex64) -> Complex64 + Send + Sync>;

/// `c · k_O · e^h`.
#[derive(Debug, Clone, PartialEq)]
pub struct Composite {
    pub c: f64,
    pub krein: KreinProduct,
    pub exp: Option<ExpRep>,
}

/// A black-box evaluator together with its declared support.
#[derive(Clone)]
pub struct BlackBox {
    pub name: String,
    pub sigma: ClosedSet,
    eval: Evaluator,
}

impl BlackBox {
    pub fn call(&self, z: Complex64) -> Complex64 {
        (self.eval)(z)
    }
}

impl fmt::Debug for BlackBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BlackBox").field("name", &self.name).field("sigma", &self.sigma).finish()
    }
}

/// `num / k_divisor`, used when no closed form for the quotient is known.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub num: Box<PickFunction>,
    pub divisor: ArcSet,
    pub sigma: ClosedSet,
}

/// A member of the class in one of its computable forms.
#[derive(Debug, Clone)]
pub enum PickFunction {
    Rep(NevanlinnaRep),
    Composite(Composite),
    BlackBox(BlackBox),
    Quotient(Quotient),
}

/// Offset used to evaluate a quotient at a cancelled zero or pole.
const CANCEL_STEP: f64 = 1e-6;

impl PickFunction {
    pub fn black_box<F>(name: impl Into<String>, sigma: ClosedSet, f: F) -> Self
    where
        F: Fn(Complex64) -> Complex64 + Send + Sync + 'static,
    {
        PickFunction::BlackBox(BlackBox { name: name.into(), sigma, eval: Shared::new(f) })
    }

    /// `k_O` itself.
    pub fn krein(set: ArcSet) -> Self {
        PickFunction::Composite(Composite { c: 1.0, krein: KreinProduct::explicit(set), exp: None })
    }

    /// Value at `z` in the closed upper half-plane.
    pub fn eval(&self, z: Complex64) -> Result<ExtComplex> {
        if z.im < 0.0 || !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::InvalidInput("evaluation point must lie in the closed upper half-plane".into()));
        }
        self.eval_ext(ExtComplex::Finite(z))
    }

    /// Value on the extended plane; black boxes have no value at `∞`.
    pub fn eval_ext(&self, z: ExtComplex) -> Result<ExtComplex> {
        match self {
            PickFunction::Rep(rep) => rep.eval_ext(z),
            PickFunction::Composite(c) => {
                let k = c.krein.eval(z)?.value;
                let e = match &c.exp {
                    Some(e) => e.eval_ext(z)?,
                    None => Complex64::new(1.0, 0.0),
                };
                Ok(match k {
                    ExtComplex::Infinity => ExtComplex::Infinity,
                    ExtComplex::Finite(k) => ExtComplex::Finite(k * e * c.c),
                })
            }
            PickFunction::BlackBox(b) => match z {
                ExtComplex::Finite(z) => Ok(ExtComplex::Finite(b.call(z))),
                ExtComplex::Infinity => Err(Error::InvalidInput(format!("{} has no value at infinity", b.name))),
            },
            PickFunction::Quotient(q) => q.eval_ext(z),
        }
    }

    /// Real part of the value at a real point, `NaN` where undefined.
    pub fn real_value(&self, x: f64) -> f64 {
        match self.eval(Complex64::new(x, 0.0)) {
            Ok(ExtComplex::Finite(v)) => v.re,
            _ => f64::NAN,
        }
    }

    /// `σ(f)` as a finite descriptor.
    pub fn sigma(&self) -> Result<ClosedSet> {
        match self {
            PickFunction::Rep(rep) => Ok(support(rep)),
            PickFunction::Composite(c) => {
                let mut s = krein_sigma(&c.krein)?;
                if let Some(e) = &c.exp {
                    let sup = e.support();
                    s.intervals.extend(sup.intervals);
                    s.infinity |= sup.infinity;
                }
                Ok(s)
            }
            PickFunction::BlackBox(b) => Ok(b.sigma.clone()),
            PickFunction::Quotient(q) => Ok(q.sigma.clone()),
        }
    }

    /// `σ(f)`, `Ω(f)`, `Γ(f)` and the zeros of `f` in `Ω(f)`.
    pub fn analysis(&self) -> Result<AnalysisResult> {
        match self {
            PickFunction::Rep(rep) => analyze(rep),
            PickFunction::Composite(c) => {
                let sigma = self.sigma()?;
                let set = krein_set(&c.krein)?;
                let zeros = k_structure(&set)?.zeros;
                Ok(AnalysisResult { omega: sigma.complement(), sigma, gamma: set, zeros })
            }
            _ => {
                let sigma = self.sigma()?;
                let omega = sigma.complement();
                let scale = self.eval(Complex64::new(0.0, 1.0))?.finite().map_or(1.0, |v| v.norm().max(1.0));
                let zero_at_infinity = matches!(self.eval_ext(ExtComplex::Infinity), Ok(ExtComplex::Finite(v)) if v.norm() <= 1e-14 * scale);
                let (gamma, zeros) = negativity_set(&omega, |x| self.real_value(x), zero_at_infinity)?;
                Ok(AnalysisResult { sigma, omega, gamma, zeros })
            }
        }
    }

    /// Value at a real point or `∞`, approached from the left for `∞`
    /// when a black box cannot be evaluated there.
    fn value_at(&self, p: ExtPoint) -> Result<ExtComplex> {
        match p {
            ExtPoint::Finite(x) => self.eval(Complex64::new(x, 0.0)),
            ExtPoint::Infinity => self.eval_ext(ExtComplex::Infinity).or_else(|_| self.eval(Complex64::new(1e12, 0.0))),
        }
    }
}

impl Quotient {
    fn eval_ext(&self, z: ExtComplex) -> Result<ExtComplex> {
        let k = KreinProduct::explicit(self.divisor.clone());
        let n = self.num.eval_ext(z)?;
        let d = k.eval(z)?.value;
        match (n, d) {
            (ExtComplex::Finite(n), ExtComplex::Finite(d)) if d != Complex64::new(0.0, 0.0) => Ok(ExtComplex::Finite(n / d)),
            (ExtComplex::Finite(_), ExtComplex::Infinity) if !self.cancels(z) => Ok(ExtComplex::real(0.0)),
            (ExtComplex::Infinity, ExtComplex::Finite(_)) if !self.cancels(z) => Ok(ExtComplex::Infinity),
            _ => match z {
                // removable: average the two real neighbours
                ExtComplex::Finite(z) if z.im == 0.0 => {
                    let side = |x: f64| self.eval_ext(ExtComplex::real(x)).and_then(|v| v.finite().ok_or(Error::NonConvergence("quotient limit")));
                    let (l, r) = (side(z.re - CANCEL_STEP)?, side(z.re + CANCEL_STEP)?);
                    Ok(ExtComplex::Finite((l + r) * 0.5))
                }
                _ => Err(Error::NonConvergence("quotient at infinity")),
            },
        }
    }

    /// Whether `z` is an endpoint of the divisor, where numerator and
    /// denominator vanish or blow up together.
    fn cancels(&self, z: ExtComplex) -> bool {
        let p = match z {
            ExtComplex::Infinity => ExtPoint::Infinity,
            ExtComplex::Finite(z) if z.im == 0.0 => ExtPoint::Finite(z.re),
            _ => return false,
        };
        self.divisor.left_endpoints().iter().chain(self.divisor.right_endpoints().iter()).any(|e| e.same(p))
    }
}

/// The regularized explicit set behind a product; generators must have
/// finite depth.
pub fn krein_set(k: &KreinProduct) -> Result<ArcSet> {
    match k.source() {
        ArcGenerator::Explicit(s) => Ok(s.regularize()),
        ArcGenerator::CantorComplement(c) => match c.depth {
            Some(d) => Ok(c.to_arcset(d).regularize()),
            None => Err(Error::InvalidInput("support of an infinite product has no finite descriptor".into())),
        },
    }
}

/// `σ(k_O)`: the uncancelled left endpoints of the regularized set.
pub fn krein_sigma(k: &KreinProduct) -> Result<ClosedSet> {
    let st = k_structure(&krein_set(k)?)?;
    Ok(ClosedSet {
        points: st.sigma.iter().filter_map(|p| p.finite()).collect(),
        intervals: Vec::new(),
        infinity: st.sigma.iter().any(|p| p.is_infinite()),
    })
}

/// `g` with `f = p_J · g` for an arc `J ⊆ Γ(f)`.
///
/// Atomic representations are divided in closed form, products lose the
/// component `J`, and everything else becomes a [`Quotient`]. The result is
/// checked to map the standard grid into the closed upper half-plane.
pub fn divide_single(f: &PickFunction, j: &Arc) -> Result<PickFunction> {
    let an = f.analysis()?;
    if !ArcSet::single(*j).is_subset_of(&an.gamma) {
        return Err(Error::NotInGamma);
    }
    let g = divide_unchecked(f, j, &an.sigma)?;
    certify_upper(&g)?;
    Ok(g)
}

fn divide_unchecked(f: &PickFunction, j: &Arc, sigma_f: &ClosedSet) -> Result<PickFunction> {
    match f {
        PickFunction::Rep(rep) if rep.rho.is_atomic() => Ok(PickFunction::Rep(divide_rep(rep, j)?)),
        PickFunction::Composite(c) => {
            let set = krein_set(&c.krein)?;
            if !set.arcs().iter().any(|a| a.b().same(j.b()) && a.a().same(j.a())) {
                return quotient(f, j, sigma_f);
            }
            let rest = ArcSet::normalize(set.arcs().iter().copied().filter(|a| !(a.b().same(j.b()) && a.a().same(j.a()))));
            Ok(PickFunction::Composite(Composite { c: c.c, krein: KreinProduct::explicit(rest), exp: c.exp.clone() }))
        }
        _ => quotient(f, j, sigma_f),
    }
}

fn quotient(f: &PickFunction, j: &Arc, sigma_f: &ClosedSet) -> Result<PickFunction> {
    let mut sigma = sigma_f.clone();
    // the pole of p_J at b cancels an isolated point of σ(f)
    match j.b() {
        ExtPoint::Infinity => sigma.infinity = false,
        ExtPoint::Finite(b) => {
            if !sigma.intervals.iter().any(|&(l, r)| b >= l - 1e-12 && b <= r + 1e-12) {
                sigma.points.retain(|&p| !same_point(p, b));
            }
        }
    }
    // a zero of p_J where f does not vanish becomes a pole of g
    let scale = f.eval(Complex64::new(0.0, 1.0))?.finite().map_or(1.0, |v| v.norm().max(1.0));
    let fa = f.value_at(j.a())?.finite().map_or(f64::INFINITY, |v| v.norm());
    if fa > 1e-9 * scale {
        match j.a() {
            ExtPoint::Infinity => sigma.infinity = true,
            ExtPoint::Finite(a) => sigma.points.push(a),
        }
    }
    let (num, divisor) = match f {
        PickFunction::Quotient(q) => (q.num.clone(), q.divisor.union(&ArcSet::single(*j))),
        other => (Box::new(other.clone()), ArcSet::single(*j)),
    };
    Ok(PickFunction::Quotient(Quotient { num, divisor, sigma }))
}

/// Closed-form division of `f = αz + C + Σ m_j/(t_j − z)` by `p_J`.
fn divide_rep(rep: &NevanlinnaRep, j: &Arc) -> Result<NevanlinnaRep> {
    let (alpha, c, m) = rep.partial_fractions().ok_or(Error::InvalidInput("closed-form division needs atoms".into()))?;
    let scale = rep.eval(Complex64::new(0.0, 1.0))?.finite().map_or(1.0, |v| v.norm().max(1.0));
    let value_at = |a: f64| -> Result<f64> {
        let v = rep.eval(Complex64::new(a, 0.0))?.finite().ok_or(Error::NotInGamma)?.re;
        Ok(if v.abs() <= 1e-10 * scale { 0.0 } else { v })
    };
    let norm = |t: f64| t.hypot(1.0);
    if j.is_punctured() {
        if alpha != 0.0 || !m.is_empty() || c >= 0.0 {
            return Err(Error::NotInGamma);
        }
        return NevanlinnaRep::linear(0.0, -c);
    }
    let (b, a) = j.raw();
    let (alpha2, c2, mut res): (f64, f64, Vec<(f64, f64)>) = match (b.is_finite(), a.is_finite()) {
        (true, true) if !j.wraps() => {
            let k = norm(b) / norm(a);
            let fa = value_at(a)?;
            let mut r: Vec<(f64, f64)> = m.iter().map(|&(t, w)| (t, w * (t - b) / ((t - a) * k))).collect();
            r.push((a, -(a - b) * fa / k));
            (alpha / k, (c + (a - b) * alpha) / k, r)
        }
        (true, true) => {
            if alpha != 0.0 {
                return Err(Error::NotInGamma);
            }
            let k = norm(b) / norm(a);
            let fa = value_at(a)?;
            let mut r: Vec<(f64, f64)> = m.iter().map(|&(t, w)| (t, -w * (t - b) / ((t - a) * k))).collect();
            r.push((a, (a - b) * fa / k));
            (0.0, -c / k, r)
        }
        (false, true) => {
            let k = norm(a);
            let fa = value_at(a)?;
            let mut r: Vec<(f64, f64)> = m.iter().map(|&(t, w)| (t, k * w / (t - a))).collect();
            r.push((a, -k * fa));
            (0.0, k * alpha, r)
        }
        (true, false) => {
            if alpha != 0.0 {
                return Err(Error::NotInGamma);
            }
            let k = norm(b);
            let total: f64 = m.iter().map(|x| x.1).sum();
            let r = m.iter().map(|&(t, w)| (t, -w * (t - b) / k)).collect();
            (-c / k, (c * b + total) / k, r)
        }
        (false, false) => unreachable!("arcs have at least one finite endpoint"),
    };
    let top = res.iter().map(|x| x.1.abs()).fold(0.0, f64::max);
    if res.iter().any(|x| x.1 < -1e-9 * top) || alpha2 < -1e-12 * scale {
        return Err(Error::NotInGamma);
    }
    res.retain(|x| x.1 > 1e-13 * top);
    NevanlinnaRep::from_partial_fractions(alpha2.max(0.0), c2, &res)
}

/// Checks `Im g ≥ 0` on the standard grid.
fn certify_upper(g: &PickFunction) -> Result<()> {
    for z in certification_grid(&g.sigma()?) {
        if let ExtComplex::Finite(v) = g.eval(z)? {
            if v.im < -1e-12 * v.norm().max(1.0) {
                return Err(Error::Certification(format!("Im g = {:e} at {z}", v.im)));
            }
        }
    }
    Ok(())
}

/// Outcome of one post-condition of the factorization.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub residual: f64,
    pub tol: f64,
}

/// `f = k_Γ · g` together with the verified post-conditions.
#[derive(Debug, Clone)]
pub struct Factorization {
    pub gamma: ArcSet,
    pub krein: KreinProduct,
    pub g: PickFunction,
    pub sigma_f: ClosedSet,
    pub sigma_g: ClosedSet,
    pub posts: Vec<Check>,
}

/// Samples per component of `Ω(g)` for the positivity check.
const POSITIVITY_SAMPLES: usize = 16;

/// Factors out the Kreĭn product over `Γ(f)` and verifies
/// that `σ(g) ⊆ σ(f)`, that `g > 0` on samples of `Ω(g)`, that `Ω(g)` is
/// regular and that `σ(f) = σ(k_Γ) ∪ σ(g)`.
pub fn factorize(f: &PickFunction) -> Result<Factorization> {
    let an = f.analysis()?;
    let gamma = an.gamma.clone();
    let g = match f {
        PickFunction::Composite(c) => PickFunction::Composite(Composite { c: c.c, krein: KreinProduct::explicit(ArcSet::empty()), exp: c.exp.clone() }),
        PickFunction::Rep(rep) if rep.rho.is_atomic() => {
            let mut cur = rep.clone();
            for j in gamma.arcs() {
                cur = divide_rep(&cur, j)?;
            }
            PickFunction::Rep(cur)
        }
        _ => {
            let mut cur = f.clone();
            for j in gamma.arcs() {
                cur = quotient(&cur, j, &cur.sigma()?)?;
            }
            cur
        }
    };
    let krein = KreinProduct::explicit(gamma.clone());
    let sigma_g = g.sigma()?;
    let sigma_k = krein_sigma(&krein)?;
    let omega_g = sigma_g.complement();
    let mut posts = Vec::with_capacity(4);
    posts.push(flag("support inclusion", an.sigma.contains_set(&sigma_g)));
    let low = min_on(&g, &omega_g)?;
    posts.push(Check { name: "positive on complement".into(), passed: low > 0.0, residual: (-low).max(0.0), tol: 0.0 });
    posts.push(flag("complement regular", omega_g.is_regular()));
    let union = ClosedSet {
        points: sigma_k.points.iter().chain(sigma_g.points.iter()).copied().collect(),
        intervals: sigma_g.intervals.clone(),
        infinity: sigma_k.infinity || sigma_g.infinity,
    };
    posts.push(flag("support splits", union.contains_set(&an.sigma) && an.sigma.contains_set(&union)));
    let failed: Vec<&str> = posts.iter().filter(|p| !p.passed).map(|p| p.name.as_str()).collect();
    if !failed.is_empty() {
        return Err(Error::Certification(format!("factorization posts failed: {}", failed.join(", "))));
    }
    Ok(Factorization { gamma, krein, g, sigma_f: an.sigma, sigma_g, posts })
}

fn flag(name: &str, ok: bool) -> Check {
    Check { name: name.into(), passed: ok, residual: if ok { 0.0 } else { 1.0 }, tol: 0.0 }
}

/// Smallest real value of `g` over samples of each component of `omega`;
/// values with a non-negligible imaginary part count as `−∞`.
fn min_on(g: &PickFunction, omega: &ArcSet) -> Result<f64> {
    let ranges: Vec<(f64, f64)> = if omega.is_full() {
        alloc::vec![(-core::f64::consts::FRAC_PI_2, core::f64::consts::FRAC_PI_2)]
    } else {
        omega.arcs().iter().map(theta_range).collect()
    };
    let mut low = f64::INFINITY;
    for (lo, hi) in ranges {
        for k in 0..POSITIVITY_SAMPLES {
            let th = lo + (hi - lo) * (k as f64 + 0.5) / POSITIVITY_SAMPLES as f64;
            let x = th.tan();
            if x.abs() > 1e12 {
                continue;
            }
            let v = match g.eval(Complex64::new(x, 0.0))? {
                ExtComplex::Finite(v) if v.im.abs() <= 1e-9 * v.norm().max(1.0) => v.re,
                _ => f64::NEG_INFINITY,
            };
            low = low.min(v);
        }
    }
    Ok(low)
}

/// `c` with `f = c · k_{Γ(f)}`, certified on a 20-point grid.
#[derive(Debug, Clone)]
pub struct ConstantFactor {
    pub c: f64,
    pub gamma: ArcSet,
    pub max_residual: f64,
    pub worst: Complex64,
}

/// Tolerance of the constant-factor certificate.
pub const CONSTANT_TOL: f64 = 1e-9;

/// For `σ(f)` of measure zero, `c = |f(i)|` and `f/(c·k_{Γ(f)}) ≡ 1`.
pub fn constant_factor_check(f: &PickFunction) -> Result<ConstantFactor> {
    let an = f.analysis()?;
    if an.sigma.measure() > 0.0 {
        return Err(Error::InvalidInput("support has positive measure".into()));
    }
    let c = f.eval(Complex64::new(0.0, 1.0))?.finite().ok_or(Error::NonConvergence("value at i"))?.norm();
    let k = KreinProduct::explicit(an.gamma.clone());
    let mut worst = (0.0, Complex64::new(0.0, 1.0));
    for z in halton_box(20, -5.0, 5.0, 5.0) {
        let fv = f.eval(z)?.finite().ok_or(Error::NonConvergence("pole in the upper half-plane"))?;
        let kv = k.eval(ExtComplex::Finite(z))?.value.finite().ok_or(Error::NonConvergence("pole in the upper half-plane"))?;
        let r = (fv / (kv * c) - 1.0).norm();
        if !(r <= worst.0) {
            worst = (r, z);
        }
    }
    if !(worst.0 <= CONSTANT_TOL) {
        return Err(Error::Certification(format!("residual {:e} at {}", worst.0, worst.1)));
    }
    Ok(ConstantFactor { c, gamma: an.gamma, max_residual: worst.0, worst: worst.1 })
}
