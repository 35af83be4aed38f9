//! Functions with prescribed real zeros and poles, realizable pairs
//! `(Ω, Γ)` and the transfer to self-maps of the disk.

use core::f64::consts::{FRAC_PI_2, PI};

use alloc::format;
use alloc::vec::Vec;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::extreal::{Arc, ArcSet, ExtComplex, ExtPoint};
use crate::factor::{Check, ExpRep, PickFunction, PsiPiece};
use crate::grid::halton;
use crate::krein::{k_structure, KreinProduct};
use crate::moebius::DiskMap;
use crate::nevanlinna::negativity_set;
use crate::{Error, Result};

/// Position on the circle `ℝ ∪ {∞}` in `[0, π)`, starting at `∞`.
fn position(p: ExtPoint) -> f64 {
    match p {
        ExtPoint::Infinity => 0.0,
        ExtPoint::Finite(x) => x.atan() + FRAC_PI_2,
    }
}

/// Prescribed zeros `A`, poles `B` and allowed singular points `Y`.
#[derive(Debug, Clone, PartialEq)]
pub struct InterpProblem {
    zeros: Vec<ExtPoint>,
    poles: Vec<ExtPoint>,
    singular: Vec<ExtPoint>,
}

fn sorted_unique(mut v: Vec<ExtPoint>) -> Vec<ExtPoint> {
    v.sort_by(|a, b| position(*a).total_cmp(&position(*b)));
    v.dedup_by(|a, b| a.same(*b));
    v
}

impl InterpProblem {
    /// The three sets must be pairwise disjoint.
    pub fn new(zeros: Vec<ExtPoint>, poles: Vec<ExtPoint>, singular: Vec<ExtPoint>) -> Result<Self> {
        if zeros.iter().chain(&poles).chain(&singular).any(|p| p.finite().is_some_and(|x| !x.is_finite())) {
            return Err(Error::InvalidInput("points must be finite reals or infinity".into()));
        }
        let (zeros, poles, singular) = (sorted_unique(zeros), sorted_unique(poles), sorted_unique(singular));
        let meets = |x: &[ExtPoint], y: &[ExtPoint]| x.iter().any(|p| y.iter().any(|q| p.same(*q)));
        if meets(&zeros, &poles) || meets(&zeros, &singular) || meets(&poles, &singular) {
            return Err(Error::InvalidInput("zeros, poles and singular points must be pairwise disjoint".into()));
        }
        Ok(InterpProblem { zeros, poles, singular })
    }

    /// Real points only.
    pub fn from_reals(zeros: &[f64], poles: &[f64], singular: &[f64]) -> Result<Self> {
        let ext = |v: &[f64]| v.iter().map(|&x| ExtPoint::Finite(x)).collect();
        InterpProblem::new(ext(zeros), ext(poles), ext(singular))
    }

    pub fn zeros(&self) -> &[ExtPoint] {
        &self.zeros
    }

    pub fn poles(&self) -> &[ExtPoint] {
        &self.poles
    }

    pub fn singular(&self) -> &[ExtPoint] {
        &self.singular
    }

    /// Components of the complement of `Y`; `None` stands for the whole
    /// circle when `Y` is empty.
    pub fn components(&self) -> Vec<Option<Arc>> {
        let y = &self.singular;
        match y.len() {
            0 => alloc::vec![None],
            1 => alloc::vec![Some(Arc::punctured(y[0]))],
            n => (0..n).map(|i| Some(Arc::new(y[i], y[(i + 1) % n]).expect("distinct points"))).collect(),
        }
    }

    /// Prescribed points of each component, in order along it (starting
    /// after `∞` for the whole circle).
    fn marked(&self) -> Vec<(Option<Arc>, Vec<Marked>)> {
        let comps = self.components();
        let mut out: Vec<(Option<Arc>, Vec<Marked>)> = comps.into_iter().map(|c| (c, Vec::new())).collect();
        let all = self.zeros.iter().map(|&p| Marked { p, zero: true }).chain(self.poles.iter().map(|&p| Marked { p, zero: false }));
        for m in all {
            let k = if self.singular.is_empty() {
                0
            } else {
                let below = self.singular.iter().filter(|y| position(**y) < position(m.p)).count();
                (below + self.singular.len() - 1) % self.singular.len()
            };
            out[k].1.push(m);
        }
        for (c, pts) in &mut out {
            let start = c.map_or(0.0, |a| position(a.b()));
            let rel = |m: &Marked| {
                let r = (position(m.p) - start) % PI;
                if r < 0.0 {
                    r + PI
                } else {
                    r
                }
            };
            pts.sort_by(|u, v| rel(u).total_cmp(&rel(v)));
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Marked {
    p: ExtPoint,
    zero: bool,
}

/// Two prescribed points of the same kind with nothing of the other kind
/// between them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Violation {
    pub first: ExtPoint,
    pub second: ExtPoint,
    pub two_zeros: bool,
    /// Offending component (`None` for the whole circle).
    pub component: Option<Arc>,
}

impl From<Violation> for Error {
    fn from(v: Violation) -> Error {
        Error::InterlacingViolation { first: v.first, second: v.second, two_zeros: v.two_zeros }
    }
}

/// Interlacing on each component of the complement of `Y`.
///
/// On an interval consecutive prescribed points must alternate in kind.
/// When `Y` is empty the component is the whole circle and alternation is
/// required cyclically, so zeros and poles come in equal numbers.
pub fn check_interlacing(p: &InterpProblem) -> core::result::Result<(), Violation> {
    for (comp, pts) in p.marked() {
        let n = pts.len();
        let pairs = if comp.is_none() && n > 0 { n } else { n.saturating_sub(1) };
        for i in 0..pairs {
            let (u, v) = (pts[i], pts[(i + 1) % n]);
            if u.zero == v.zero {
                return Err(Violation { first: u.p, second: v.p, two_zeros: u.zero, component: comp });
            }
        }
    }
    Ok(())
}

/// A regular set `O` solving the endpoint condition: within each component every
/// pole is paired with the next zero, and an unpaired zero (pole) at the
/// start (end) is joined to the component's endpoint. The union is
/// regularized.
pub fn construct_o(p: &InterpProblem) -> Result<ArcSet> {
    check_interlacing(p)?;
    let mut arcs = Vec::new();
    for (comp, mut pts) in p.marked() {
        if pts.is_empty() {
            continue;
        }
        match comp {
            None => {
                if pts[0].zero {
                    pts.rotate_left(1);
                }
                for pair in pts.chunks(2) {
                    arcs.push(Arc::new(pair[0].p, pair[1].p)?);
                }
            }
            Some(c) => {
                let mut i = 0;
                if pts[0].zero {
                    arcs.push(Arc::new(c.b(), pts[0].p)?);
                    i = 1;
                }
                while i < pts.len() {
                    if i + 1 < pts.len() {
                        arcs.push(Arc::new(pts[i].p, pts[i + 1].p)?);
                        i += 2;
                    } else {
                        arcs.push(Arc::new(pts[i].p, c.a())?);
                        i += 1;
                    }
                }
            }
        }
    }
    Ok(ArcSet::normalize(arcs).regularize())
}

fn contains(set: &[ExtPoint], p: ExtPoint) -> bool {
    set.iter().any(|q| q.same(p))
}

/// The endpoint condition for a candidate `O`: regular, and
/// `A ⊆ {right endpoints} ⊆ A ∪ Y`, `B ⊆ {left endpoints} ⊆ B ∪ Y`.
pub fn satisfies_endpoint_condition(p: &InterpProblem, o: &ArcSet) -> bool {
    if !o.is_regular() {
        return false;
    }
    let (lefts, rights) = (o.left_endpoints(), o.right_endpoints());
    p.zeros.iter().all(|&a| contains(&rights, a))
        && rights.iter().all(|&r| contains(&p.zeros, r) || contains(&p.singular, r))
        && p.poles.iter().all(|&b| contains(&lefts, b))
        && lefts.iter().all(|&l| contains(&p.poles, l) || contains(&p.singular, l))
}

/// `f = k_O` with its certificates.
#[derive(Debug, Clone)]
pub struct Interpolant {
    pub set: ArcSet,
    pub f: PickFunction,
    pub checks: Vec<Check>,
    /// Poles of `f` at singular points (produced by loners).
    pub extra_poles: Vec<ExtPoint>,
    /// Zeros of `f` at singular points.
    pub extra_zeros: Vec<ExtPoint>,
}

impl Interpolant {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Tolerance on `|f(a)|` at prescribed zeros.
pub const ZERO_TOL: f64 = 1e-10;
/// Tolerance on the mismatch of the two one-sided residues at a pole.
pub const POLE_TOL: f64 = 1e-3;

fn check(name: &str, residual: f64, tol: f64) -> Check {
    Check { name: name.into(), passed: residual <= tol, residual, tol }
}

/// Builds `f = k_O` for `O = construct_o(p)` and certifies the zeros,
/// the poles, real values off `B ∪ Y`, and both inclusion chains.
pub fn build_function(p: &InterpProblem) -> Result<Interpolant> {
    let set = construct_o(p)?;
    let k = KreinProduct::explicit(set.clone());
    let st = k_structure(&set)?;
    let value = |z: ExtComplex| -> Result<ExtComplex> { Ok(k.eval(z)?.value) };
    let mut checks = Vec::new();

    let mut worst = 0.0f64;
    for &a in &p.zeros {
        worst = worst.max(match value(a.into())? {
            ExtComplex::Finite(v) => v.norm(),
            ExtComplex::Infinity => f64::INFINITY,
        });
    }
    checks.push(check("prescribed zeros", worst, ZERO_TOL));

    let marked: Vec<ExtPoint> = p.zeros.iter().chain(&p.poles).chain(&p.singular).copied().collect();
    let mut worst = 0.0f64;
    for &b in &p.poles {
        worst = worst.max(pole_residual(&value, b, &marked)?);
    }
    checks.push(check("prescribed poles", worst, POLE_TOL));

    let mut worst = 0.0f64;
    for i in 1..=64u64 {
        let x = -10.0 + 20.0 * halton(i, 2);
        if marked.iter().any(|q| q.finite().is_some_and(|y| (y - x).abs() < 1e-3)) {
            continue;
        }
        worst = worst.max(match value(ExtComplex::real(x))? {
            ExtComplex::Finite(v) if v.re.is_finite() => v.im.abs() / v.norm().max(1.0),
            _ => f64::INFINITY,
        });
    }
    checks.push(check("real off singular set", worst, 1e-12));

    let zeros_ok = p.zeros.iter().all(|&a| contains(&st.zeros, a))
        && st.zeros.iter().all(|&z| contains(&p.zeros, z) || contains(&p.singular, z));
    let poles_ok = p.poles.iter().all(|&b| contains(&st.poles, b))
        && st.poles.iter().all(|&q| contains(&p.poles, q) || contains(&p.singular, q));
    checks.push(check("zero inclusions", if zeros_ok { 0.0 } else { 1.0 }, 0.0));
    checks.push(check("pole inclusions", if poles_ok { 0.0 } else { 1.0 }, 0.0));

    let extra_poles = st.poles.iter().copied().filter(|q| !contains(&p.poles, *q)).collect();
    let extra_zeros = st.zeros.iter().copied().filter(|z| !contains(&p.zeros, *z)).collect();
    Ok(Interpolant { set, f: PickFunction::Composite(crate::factor::Composite { c: 1.0, krein: k, exp: None }), checks, extra_poles, extra_zeros })
}

/// `|1 − R₊/R₋|` for the one-sided residues `R± = ∓δ f(b ± δ)` at a pole
/// (in the coordinate `−1/x` at `∞`); both must be positive, which is the
/// sign change `+∞ → −∞` of an increasing function.
fn pole_residual<V>(value: &V, b: ExtPoint, marked: &[ExtPoint]) -> Result<f64>
where
    V: Fn(ExtComplex) -> Result<ExtComplex>,
{
    if !value(b.into())?.is_infinite() {
        return Ok(f64::INFINITY);
    }
    let gap = marked
        .iter()
        .filter(|q| !q.same(b))
        .map(|q| match (q, b) {
            (ExtPoint::Finite(y), ExtPoint::Finite(x)) => (y - x).abs(),
            (ExtPoint::Finite(y), ExtPoint::Infinity) => 1.0 / y.abs(),
            (ExtPoint::Infinity, ExtPoint::Finite(_)) => 1.0,
            _ => f64::INFINITY,
        })
        .fold(1.0, f64::min);
    let d = 1e-6 * gap;
    let real = |x: f64| -> Result<f64> { value(ExtComplex::real(x))?.finite().map(|v| v.re).ok_or(Error::NonConvergence("pole neighbourhood")) };
    let (plus, minus) = match b {
        ExtPoint::Finite(x) => (-d * real(x + d)?, d * real(x - d)?),
        // u = −1/x: x = −1/u, so u = +d is x = −1/d
        ExtPoint::Infinity => (-d * real(-1.0 / d)?, d * real(1.0 / d)?),
    };
    if !(plus > 0.0 && minus > 0.0) {
        return Ok(f64::INFINITY);
    }
    Ok((1.0 - plus / minus).abs())
}

/// Outcome of the realizability test for a pair `(Ω, O)`.
#[derive(Debug, Clone)]
pub struct Realizability {
    /// `O ⊆ Ω`.
    pub inside: bool,
    /// `O` is Lebesgue regular.
    pub regular: bool,
    /// `Ω = Ω₁ ∖ X`.
    pub complement: bool,
    pub function: Option<PickFunction>,
}

impl Realizability {
    pub fn holds(&self) -> bool {
        self.inside && self.regular && self.complement
    }
}

/// `ψ = 1/2` on the open complement of a regular set, split into pieces.
fn half_density_off(omega1: &ArcSet) -> Result<ExpRep> {
    let mut pieces = Vec::new();
    let mut push = |l: f64, r: f64| pieces.push(PsiPiece { l, r, value: 0.5 });
    for arc in omega1.complement_interior().arcs() {
        let (b, a) = arc.raw();
        if arc.is_punctured() {
            match arc.b() {
                ExtPoint::Infinity => push(f64::NEG_INFINITY, f64::INFINITY),
                ExtPoint::Finite(x) => {
                    push(f64::NEG_INFINITY, x);
                    push(x, f64::INFINITY);
                }
            }
        } else if arc.wraps() {
            push(b, f64::INFINITY);
            push(f64::NEG_INFINITY, a);
        } else {
            push(b, a);
        }
    }
    ExpRep::new(0.0, pieces)
}

/// Checks whether `(Ω, O) = (Ω(f), Γ(f))` for some `f` and builds
/// `f = k_O e^v` when it does, where `v` has density `1/2` off the
/// regularization `Ω₁`. The constructed `f` is analyzed again: `σ(f)` must
/// complement `Ω` and the sampled sign changes must reproduce `O`.
pub fn realizable_pair(omega: &ArcSet, o: &ArcSet) -> Result<Realizability> {
    let inside = o.is_subset_of(omega);
    let regular = o.is_regular();
    let omega1 = omega.regularize();
    let complement = omega1.remove_points(&o.left_endpoints()) == *omega;
    let mut r = Realizability { inside, regular, complement, function: None };
    if !r.holds() {
        return Ok(r);
    }
    let e = half_density_off(&omega1)?;
    let f = PickFunction::Composite(crate::factor::Composite { c: 1.0, krein: KreinProduct::explicit(o.clone()), exp: Some(e) });
    let omega_f = f.sigma()?.complement();
    if omega_f != *omega {
        return Err(Error::Certification(format!("constructed function has complement {omega_f}, expected {omega}")));
    }
    let zero_at_infinity = matches!(f.eval_ext(ExtComplex::Infinity), Ok(ExtComplex::Finite(v)) if v.norm() < 1e-14);
    let (gamma, _) = negativity_set(&omega_f, |x| f.real_value(x), zero_at_infinity)?;
    if gamma != *o {
        return Err(Error::Certification(format!("constructed function is negative on {gamma}, expected {o}")));
    }
    r.function = Some(f);
    Ok(r)
}

/// `θ = T ∘ f ∘ C⁻¹` on the closed disk, where `C` is the Cayley map at
/// `ζ`, `f = k_O` solves the pulled-back problem and `T` sends `0 ↦ α`,
/// `∞ ↦ β`.
#[derive(Debug, Clone)]
pub struct DiskInterpolant {
    pub interpolant: Interpolant,
    pub cayley: DiskMap,
    pub target: DiskMap,
    pub alpha: Complex64,
    pub beta: Complex64,
}

impl DiskInterpolant {
    /// `θ(w)` for `|w| ≤ 1`.
    pub fn eval(&self, w: Complex64) -> Result<Complex64> {
        if w.norm() > 1.0 + 1e-12 {
            return Err(Error::InvalidInput("point outside the closed disk".into()));
        }
        let z = self.cayley.invert(w);
        let z = match z {
            // boundary points come back with rounding noise off the axis
            ExtComplex::Finite(z) if w.norm() >= 1.0 - 1e-12 => ExtComplex::real(z.re),
            other => other,
        };
        let v = self.interpolant.f.eval_ext(z)?;
        self.target.apply(v).finite().ok_or(Error::NonConvergence("disk value"))
    }
}

fn pull_back(c: &DiskMap, w: Complex64) -> Result<ExtPoint> {
    if (w.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidInput("boundary points must be unimodular".into()));
    }
    Ok(match c.invert(w) {
        ExtComplex::Infinity => ExtPoint::Infinity,
        ExtComplex::Finite(z) if z.re.abs() > 1e15 => ExtPoint::Infinity,
        ExtComplex::Finite(z) => ExtPoint::Finite(z.re),
    })
}

/// Samples used by the disk certificates.
pub const DISK_SAMPLES: usize = 100;

/// Interpolation on the circle: `θ = α` exactly on `A′` and `θ = β` on `B′`
/// among boundary points off `Z`, with `|θ| = 1` there.
pub fn disk_interpolate(
    a: &[Complex64],
    b: &[Complex64],
    z: &[Complex64],
    alpha: Complex64,
    beta: Complex64,
    zeta: Complex64,
) -> Result<(DiskInterpolant, Vec<Check>)> {
    let cayley = DiskMap::cayley(zeta)?;
    let target = DiskMap::target(alpha, beta)?;
    let pull = |v: &[Complex64]| v.iter().map(|&w| pull_back(&cayley, w)).collect::<Result<Vec<_>>>();
    let problem = InterpProblem::new(pull(a)?, pull(b)?, pull(z)?)?;
    let interpolant = build_function(&problem)?;
    let theta = DiskInterpolant { interpolant, cayley, target, alpha, beta };
    let mut checks = theta.interpolant.checks.clone();

    let mut worst = 0.0f64;
    for i in 1..=DISK_SAMPLES as u64 {
        let w = Complex64::from_polar(0.95 * halton(i, 2).sqrt(), 2.0 * PI * halton(i, 3));
        worst = worst.max(theta.eval(w)?.norm());
    }
    // a constant θ is unimodular; otherwise it maps into the open disk
    let constant = theta.interpolant.set.is_empty() || theta.interpolant.set.is_full();
    checks.push(check("interior modulus", worst, if constant { 1.0 + 1e-12 } else { 1.0 - 1e-12 }));

    let mut worst = 0.0f64;
    for i in 0..DISK_SAMPLES {
        let w = Complex64::from_polar(1.0, 2.0 * PI * (i as f64 + 0.37) / DISK_SAMPLES as f64);
        if z.iter().chain(a).chain(b).any(|q| (q - w).norm() < 1e-6) {
            continue;
        }
        worst = worst.max((theta.eval(w)?.norm() - 1.0).abs());
    }
    checks.push(check("boundary modulus", worst, 1e-8));

    let hit = |pts: &[Complex64], want: Complex64| -> Result<f64> {
        pts.iter().try_fold(0.0f64, |m, &w| Ok(m.max((theta.eval(w)? - want).norm())))
    };
    checks.push(check("values on A", hit(a, alpha)?, 1e-8));
    checks.push(check("values on B", hit(b, beta)?, 1e-8));
    Ok((theta, checks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use ExtPoint::{Finite as F, Infinity as Inf};

    fn problem(a: &[f64], b: &[f64], y: &[f64]) -> InterpProblem {
        InterpProblem::from_reals(a, b, y).unwrap()
    }

    #[test]
    fn interlacing_examples() {
        assert!(check_interlacing(&problem(&[0.0], &[1.0], &[])).is_ok());
        let v = check_interlacing(&problem(&[0.0, 1.0], &[5.0], &[])).unwrap_err();
        assert!(v.two_zeros && v.first.same(F(0.0)) && v.second.same(F(1.0)));
        // on the whole circle 2 and 0 are also joined through ∞ with no pole
        assert!(check_interlacing(&problem(&[0.0, 2.0], &[1.0], &[])).is_err());
        assert!(check_interlacing(&problem(&[0.0, 2.0], &[1.0], &[5.0])).is_ok());
    }

    #[test]
    fn construction_examples() {
        let o = construct_o(&problem(&[0.0], &[1.0], &[])).unwrap();
        assert_eq!(o, ArcSet::single(Arc::finite(1.0, 0.0).unwrap()));
        let o = construct_o(&problem(&[2.0], &[1.0], &[])).unwrap();
        assert_eq!(o, ArcSet::single(Arc::finite(1.0, 2.0).unwrap()));
        let o = construct_o(&problem(&[1.0], &[], &[0.0])).unwrap();
        assert_eq!(o, ArcSet::single(Arc::finite(0.0, 1.0).unwrap()));
    }

    #[test]
    fn loners_on_both_sides_cancel() {
        let p = problem(&[1.0], &[-1.0], &[0.0]);
        let o = construct_o(&p).unwrap();
        assert_eq!(o, ArcSet::single(Arc::finite(-1.0, 1.0).unwrap()));
        let f = build_function(&p).unwrap();
        assert!(f.passed() && f.extra_poles.is_empty());
    }

    #[test]
    fn build_examples() {
        let f = build_function(&problem(&[0.0], &[1.0], &[])).unwrap();
        assert!(f.passed());
        let z = Complex64::new(0.3, 0.9);
        let v = f.f.eval(z).unwrap().finite().unwrap();
        let want = -(2f64.sqrt()) * z / (z - 1.0);
        assert!((v - want).norm() < 1e-14);
        let f = build_function(&problem(&[], &[], &[])).unwrap();
        assert_eq!(f.f.eval(z).unwrap(), ExtComplex::real(1.0));
        let f = build_function(&problem(&[1.0], &[], &[0.0])).unwrap();
        assert!(f.passed());
        assert_eq!(f.extra_poles, [F(0.0)]);
    }

    #[test]
    fn realizable_examples() {
        let omega = ArcSet::single(Arc::punctured(F(0.0)));
        let o = ArcSet::single(Arc::new(F(0.0), Inf).unwrap());
        let r = realizable_pair(&omega, &o).unwrap();
        assert!(r.holds());
        let f = r.function.unwrap();
        let z = Complex64::new(-0.4, 1.3);
        assert!((f.eval(z).unwrap().finite().unwrap() + z.inv()).norm() < 1e-14);
        let small = ArcSet::single(Arc::finite(2.0, 3.0).unwrap());
        assert!(!realizable_pair(&small, &o).unwrap().inside);
        let split = ArcSet::from_pairs([(F(0.0), F(1.0)), (F(1.0), F(2.0))]).unwrap();
        let r = realizable_pair(&ArcSet::full(), &split).unwrap();
        assert!(!r.regular);
    }

    #[test]
    fn realizable_with_density() {
        let omega = ArcSet::from_pairs([(F(1.0), F(2.0)), (F(2.0), F(5.0))]).unwrap();
        let o = ArcSet::single(Arc::finite(2.0, 3.0).unwrap());
        let r = realizable_pair(&omega, &o).unwrap();
        assert!(r.holds() && r.function.is_some());
    }

    #[test]
    fn disk_example() {
        let one = Complex64::new(1.0, 0.0);
        let (theta, checks) = disk_interpolate(&[one], &[-one], &[], -one, one, Complex64::new(0.0, 1.0)).unwrap();
        assert!(checks.iter().all(|c| c.passed), "{checks:?}");
        assert!((theta.eval(one).unwrap() + 1.0).norm() < 1e-8);
        assert!((theta.eval(-one).unwrap() - 1.0).norm() < 1e-8);
        assert!(theta.eval(Complex64::from_polar(0.5, PI / 3.0)).unwrap().norm() < 1.0);
    }

    #[test]
    fn disk_without_points_is_constant() {
        let i = Complex64::new(0.0, 1.0);
        let (theta, checks) = disk_interpolate(&[], &[], &[], -i, i, Complex64::new(0.5, 2.0)).unwrap();
        assert!(checks.iter().all(|c| c.passed));
        let v = theta.eval(Complex64::new(0.1, 0.2)).unwrap();
        assert!((v - theta.eval(Complex64::new(-0.6, 0.0)).unwrap()).norm() < 1e-14);
        assert!((v.norm() - 1.0).abs() < 1e-14);
    }
}
