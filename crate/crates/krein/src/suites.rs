//! Invariant suites for `krein check`. Random instances are drawn from a
//! ChaCha stream seeded by `--seed`, so reports are reproducible.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use krein_core::factor::{constant_factor_check, factorize, PickFunction, CONSTANT_TOL};
use krein_core::grid::halton_box;
use krein_core::interp::{build_function, check_interlacing, construct_o, satisfies_endpoint_condition, InterpProblem};
use krein_core::krein::{equivariance_transport, k_integral_eval, log_p, p_eval, KreinProduct};
use krein_core::moebius::HalfPlaneAuto;
use krein_core::nevanlinna::{
    boole_superlevel_measure, letac_preimage_length, recover_alpha, recover_atom, recover_beta, stieltjes_density_limit, z_plus_i, Measure,
    NevanlinnaRep,
};
use krein_core::{Arc, ArcGenerator, ArcSet, Complex64, ExtComplex, ExtPoint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::error::CliError;
use crate::report::{arcset_json, CheckRow, Report};
use crate::run::{ladder_of, MEASURE_TOL};
use crate::spec::{InterpKind, Overrides, SpecFile, Task};

pub const SUITES: [&str; 6] = ["krein-props", "nevanlinna-roundtrip", "boole", "letac", "factor-posts", "interp-equivalence"];

/// Random instances per suite.
const INSTANCES: usize = 20;

fn spread(r: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64, gap: f64) -> Vec<f64> {
    loop {
        let mut v: Vec<f64> = (0..n).map(|_| r.gen_range(lo..hi)).collect();
        v.sort_by(f64::total_cmp);
        if v.windows(2).all(|w| w[1] - w[0] >= gap) {
            return v;
        }
    }
}

fn random_arc(r: &mut ChaCha8Rng) -> Arc {
    let p = spread(r, 2, -5.0, 5.0, 0.05);
    let (b, a) = match r.gen_range(0..4) {
        0 => (ExtPoint::Finite(p[0]), ExtPoint::Finite(p[1])),
        1 => (ExtPoint::Finite(p[1]), ExtPoint::Finite(p[0])),
        2 => (ExtPoint::Infinity, ExtPoint::Finite(p[0])),
        _ => (ExtPoint::Finite(p[0]), ExtPoint::Infinity),
    };
    Arc::new(b, a).expect("distinct endpoints")
}

fn random_atomic(r: &mut ChaCha8Rng, alpha: Option<f64>) -> NevanlinnaRep {
    let n = r.gen_range(1..=8);
    let ts = spread(r, n, -5.0, 5.0, 0.1);
    let atoms = ts.into_iter().map(|t| (t, r.gen_range(0.1..2.0))).collect();
    let alpha = alpha.unwrap_or_else(|| if r.gen_bool(0.3) { 0.0 } else { r.gen_range(0.1..2.0) });
    NevanlinnaRep::new(alpha, r.gen_range(-2.0..2.0), Measure::atomic(atoms).expect("valid atoms")).expect("valid rep")
}

fn value(k: &KreinProduct, z: ExtComplex) -> Result<Option<Complex64>, CliError> {
    Ok(k.eval(z)?.value.finite())
}

/// Largest deviation, treating a pole on only one side as infinite.
fn gap(u: Option<Complex64>, v: Option<Complex64>) -> f64 {
    match (u, v) {
        (Some(u), Some(v)) => (u - v).norm() / v.norm().max(1.0),
        (None, None) => 0.0,
        _ => f64::INFINITY,
    }
}

fn krein_props(set: &ArcSet, rng: &mut ChaCha8Rng, r: &mut Report) -> Result<(), CliError> {
    let k = KreinProduct::explicit(set.clone());
    let reg = set.regularize();
    let kr = KreinProduct::explicit(reg.clone());
    r.set("regularized", arcset_json(&reg));
    let grid = halton_box(100, -5.0, 5.0, 5.0);
    let at_i = value(&k, Complex64::new(0.0, 1.0).into())?.map_or(f64::INFINITY, |v| (v.norm() - 1.0).abs());
    r.checks.push(CheckRow::new("|k(i)| = 1", at_i, 1e-12));
    let (mut same, mut angle, mut integral) = (0.0f64, 0.0f64, 0.0f64);
    for &z in &grid {
        let v = value(&k, z.into())?;
        same = same.max(gap(v, value(&kr, z.into())?));
        if let Some(v) = v {
            let mut d = (v.arg() - set.angle_subtended(z)).abs();
            d = d.min((d - 2.0 * PI).abs());
            angle = angle.max(d);
            integral = integral.max((k_integral_eval(set, z, 1e-12)? - v).norm());
        }
    }
    r.checks.push(CheckRow::new("k over the regularized set agrees", same, 1e-12));
    r.checks.push(CheckRow::new("arg k = subtended angle", angle, 1e-10));
    r.checks.push(CheckRow::new("integral form = product", integral, 1e-8));

    let mut exp_log = 0.0f64;
    for _ in 0..100 {
        let j = random_arc(rng);
        let z = Complex64::new(rng.gen_range(-6.0..6.0), rng.gen_range(0.05..5.0));
        let p = p_eval(&j, z.into()).finite().ok_or(krein_core::Error::NonConvergence("factor value"))?;
        exp_log = exp_log.max((log_p(&j, z).exp() - p).norm() / p.norm().max(1.0));
    }
    r.checks.push(CheckRow::new("exp(log p) = p on random arcs", exp_log, 1e-12));

    let mut equi = 0.0f64;
    for _ in 0..INSTANCES {
        let (a, b, c) = (rng.gen_range(0.3..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let phi = HalfPlaneAuto::new(a, b, c, (1.0 + b * c) / a)?;
        let (pulled, coef) = equivariance_transport(set, &phi)?;
        let z = Complex64::new(rng.gen_range(-6.0..6.0), rng.gen_range(0.05..5.0));
        let lhs = value(&KreinProduct::explicit(pulled), z.into())?;
        let rhs = value(&k, phi.apply(z))?.map(|v| v * coef);
        equi = equi.max(gap(lhs, rhs));
    }
    r.checks.push(CheckRow::new("equivariance under automorphisms", equi, 1e-10));
    Ok(())
}

fn roundtrip(reps: &[NevanlinnaRep], opts: &Overrides, r: &mut Report) -> Result<(), CliError> {
    let ladder = ladder_of(opts)?;
    let (mut alpha, mut beta, mut atoms) = (0.0f64, 0.0f64, 0.0f64);
    for rep in reps {
        let f = |z: Complex64| rep.eval(z).ok().and_then(ExtComplex::finite).unwrap_or(Complex64::new(f64::NAN, f64::NAN));
        alpha = alpha.max((recover_alpha(f, 1e-6)? - rep.alpha).abs());
        beta = beta.max((recover_beta(f) - rep.beta).abs());
        for &(t, w) in rep.rho.atoms() {
            atoms = atoms.max((recover_atom(f, t, &ladder, 1e-6)? - w).abs());
        }
    }
    r.set("instances", json!(reps.len()));
    r.checks.push(CheckRow::new("alpha recovered", alpha, 1e-6));
    r.checks.push(CheckRow::new("beta recovered", beta, 1e-6));
    r.checks.push(CheckRow::new("atom masses recovered", atoms, 1e-6));
    let mut dens = 0.0f64;
    for k in 0..10 {
        let t = -4.5 + k as f64;
        dens = dens.max((stieltjes_density_limit(z_plus_i, t, &ladder, 1e-10)? - 1.0 / (PI * (1.0 + t * t))).abs());
    }
    r.checks.push(CheckRow::new("density of z + i", dens, 1e-8));
    Ok(())
}

fn factor_posts(fs: &[PickFunction], r: &mut Report) -> Result<(), CliError> {
    let mut posts: BTreeMap<String, CheckRow> = BTreeMap::new();
    let mut failures = 0;
    for f in fs {
        let fac = match factorize(f) {
            Ok(fac) => fac,
            Err(e) => {
                failures += 1;
                r.error.get_or_insert(e.to_string());
                continue;
            }
        };
        let mut rows: Vec<CheckRow> = fac.posts.iter().map(CheckRow::from).collect();
        if fac.sigma_f.measure() == 0.0 {
            let c = constant_factor_check(f)?;
            rows.push(CheckRow::new("f = c k", c.max_residual, CONSTANT_TOL));
        }
        for c in rows {
            let e = posts.entry(c.name.clone()).or_insert_with(|| CheckRow::new(c.name.clone(), 0.0, c.tol));
            e.residual = e.residual.max(c.residual);
            e.passed &= c.passed;
        }
    }
    r.set("instances", json!(fs.len()));
    r.checks.push(CheckRow::new("factorizations completed", failures as f64, 0.0));
    r.checks.extend(posts.into_values());
    Ok(())
}

/// Random problem on at most 8 points with at most 3 of each kind.
fn random_problem(rng: &mut ChaCha8Rng) -> InterpProblem {
    let pts = spread(rng, 8, -6.0, 6.0, 0.2);
    let (na, nb, ny) = (rng.gen_range(0..=3), rng.gen_range(0..=3), rng.gen_range(0..=2));
    InterpProblem::from_reals(&pts[..na], &pts[na..na + nb], &pts[na + nb..na + nb + ny]).expect("distinct points")
}

fn interp_equivalence(problems: &[InterpProblem], r: &mut Report) -> Result<(), CliError> {
    let (mut agree, mut interlaced, mut uncertified) = (0usize, 0usize, 0usize);
    for p in problems {
        let three = check_interlacing(p).is_ok();
        let two = construct_o(p).is_ok_and(|o| satisfies_endpoint_condition(p, &o));
        agree += usize::from(two == three);
        if three {
            interlaced += 1;
            if !build_function(p)?.passed() {
                uncertified += 1;
            }
        }
    }
    r.set("instances", json!(problems.len()));
    r.set("agreement", json!(agree));
    r.set("interlaced", json!(interlaced));
    r.checks.push(CheckRow::new("interlacing iff endpoint solution", (problems.len() - agree) as f64, 0.0));
    r.checks.push(CheckRow::new("constructed functions certified", uncertified as f64, 0.0));
    Ok(())
}

/// Runs `suite` on the spec's instance when one is given, otherwise on the
/// built-in example and seeded random instances.
pub fn run_suite(suite: &str, spec: Option<&SpecFile>, opts: &Overrides) -> Result<Report, CliError> {
    let task = spec.map(SpecFile::task).transpose()?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.unwrap_or(0));
    let mut r = Report::new("check", json!({ "suite": suite, "spec": spec.map(SpecFile::task_json) }));
    let wrong = |t: &Task| CliError::Input(format!("suite {suite} cannot use a {} spec", t.name()));
    match suite {
        "krein-props" => {
            let set = match &task {
                None => ArcSet::from_pairs([(1.0.into(), 2.0.into()), (2.0.into(), 3.0.into())])?,
                Some(Task::Krein(k)) => match k.build(opts)?.source() {
                    ArcGenerator::Explicit(s) => s.clone(),
                    ArcGenerator::CantorComplement(_) => return Err(CliError::Input("krein-props needs an explicit arc set".into())),
                },
                Some(t) => return Err(wrong(t)),
            };
            r.set("set", arcset_json(&set));
            krein_props(&set, &mut rng, &mut r)?;
        }
        "nevanlinna-roundtrip" => {
            let reps = match &task {
                None => (0..INSTANCES).map(|_| random_atomic(&mut rng, None)).collect(),
                Some(Task::Nevanlinna(n)) => {
                    let rep = n.rep()?;
                    if !rep.rho.is_atomic() {
                        return Err(CliError::Input("nevanlinna-roundtrip needs a purely atomic measure".into()));
                    }
                    vec![rep]
                }
                Some(t) => return Err(wrong(t)),
            };
            roundtrip(&reps, opts, &mut r)?;
        }
        "boole" => {
            let (mu, ys) = match &task {
                None => (Measure::atomic(vec![(-1.0, 1.0), (1.0, 1.0)])?, vec![1.0]),
                Some(Task::Boole(b)) => (b.measure()?, b.y.values()),
                Some(t) => return Err(wrong(t)),
            };
            let mut levels = Vec::new();
            let mut worst = 0.0f64;
            for &y in &ys {
                let s = boole_superlevel_measure(&mu, y)?;
                levels.push(json!({ "y": y, "plus": s.plus, "minus": s.minus }));
                worst = worst.max((s.plus - mu.total_mass() / y).abs()).max((s.minus - mu.total_mass() / y).abs());
            }
            r.set("levels", json!(levels));
            r.checks.push(CheckRow::new("given measure", worst, MEASURE_TOL));
            let mut random = 0.0f64;
            for _ in 0..INSTANCES {
                let n = rng.gen_range(1..=10);
                let ts = spread(&mut rng, n, -5.0, 5.0, 0.01);
                let m = Measure::atomic(ts.into_iter().map(|t| (t, rng.gen_range(0.05..2.0))).collect())?;
                for y in [0.5, 1.0, 3.0] {
                    let s = boole_superlevel_measure(&m, y)?;
                    random = random.max((s.plus - m.total_mass() / y).abs()).max((s.minus - m.total_mass() / y).abs());
                }
            }
            r.checks.push(CheckRow::new("random measures", random, MEASURE_TOL));
        }
        "letac" => {
            let cases = match &task {
                None => (0..INSTANCES)
                    .map(|_| {
                        let c = rng.gen_range(-5.0..5.0);
                        (random_atomic(&mut rng, Some(1.0)), c, c + rng.gen_range(0.1..6.0))
                    })
                    .collect(),
                Some(Task::Letac(l)) => vec![(l.function.rep()?, l.interval[0], l.interval[1])],
                Some(t) => return Err(wrong(t)),
            };
            let mut worst = 0.0f64;
            for (rep, c, d) in &cases {
                worst = worst.max((letac_preimage_length(rep, *c, *d)? - (d - c)).abs());
            }
            r.set("instances", json!(cases.len()));
            r.checks.push(CheckRow::new("preimage length = d - c", worst, MEASURE_TOL));
        }
        "factor-posts" => {
            let fs = match &task {
                None => (0..INSTANCES).map(|_| PickFunction::Rep(random_atomic(&mut rng, None))).collect(),
                Some(t) if t.is_function() => vec![t.function(opts)?],
                Some(t) => return Err(wrong(t)),
            };
            factor_posts(&fs, &mut r)?;
        }
        "interp-equivalence" => {
            let problems = match &task {
                None => (0..100).map(|_| random_problem(&mut rng)).collect(),
                Some(Task::Interp(i)) => match i.build()? {
                    InterpKind::Line(p) => vec![p],
                    InterpKind::Disk(_) => return Err(CliError::Input("interp-equivalence takes a problem on the line".into())),
                },
                Some(t) => return Err(wrong(t)),
            };
            interp_equivalence(&problems, &mut r)?;
        }
        other => return Err(CliError::Input(format!("unknown suite {other:?}; expected one of {SUITES:?}"))),
    }
    Ok(r)
}
