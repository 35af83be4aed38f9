//! The `eval`, `factor` and `solve` commands.

use krein_core::factor::{constant_factor_check, factorize, PickFunction, CONSTANT_TOL};
use krein_core::interp::{build_function, check_interlacing, disk_interpolate};
use krein_core::krein::KreinProduct;
use krein_core::nevanlinna::{boole_superlevel_measure, letac_preimage_length};
use krein_core::numeric::{default_eps_ladder, extrapolate_to_zero};
use krein_core::{ArcGenerator, Complex64, Error, ExtComplex, ExtPoint};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::grid::{check_eps, Grid, DEFAULT_GRID};
use crate::report::{arcset_json, closed_set_json, complex_json, point_json, CheckRow, Flag, Report, Row};
use crate::spec::{CantorDto, ExpDto, InterpKind, KreinDto, NevanlinnaDto, Overrides, SpecFile, Task};

/// Relative tolerance of the ε-extrapolation for boundary values.
const BOUNDARY_REL_TOL: f64 = 1e-6;

/// Identity tolerance for the Boole and Letac checks.
pub const MEASURE_TOL: f64 = 1e-8;

pub fn grid_of(opts: &Overrides) -> Result<Grid, CliError> {
    opts.grid.as_deref().unwrap_or(DEFAULT_GRID).parse()
}

pub fn ladder_of(opts: &Overrides) -> Result<Vec<f64>, CliError> {
    match &opts.eps {
        Some(v) => {
            check_eps(v)?;
            Ok(v.clone())
        }
        None => Ok(default_eps_ladder()),
    }
}

/// `lim f(x + iε)`: exact for representations, direct for the ladder
/// `[0]`, extrapolated otherwise.
fn boundary_value(f: &PickFunction, x: f64, ladder: &[f64]) -> Option<ExtComplex> {
    if let PickFunction::Rep(rep) = f {
        return rep.boundary_value(x).ok();
    }
    if ladder == [0.0] {
        return f.eval(Complex64::new(x, 0.0)).ok();
    }
    let part = |im: bool| {
        extrapolate_to_zero(
            ladder,
            |e| match f.eval(Complex64::new(x, e)) {
                Ok(ExtComplex::Finite(v)) => if im { v.im } else { v.re },
                _ => f64::NAN,
            },
            BOUNDARY_REL_TOL,
        )
        .ok()
    };
    Some(ExtComplex::Finite(Complex64::new(part(false)?, part(true)?)))
}

/// Values of `f` on the grid.
pub fn eval_rows(f: &PickFunction, grid: &Grid, ladder: &[f64]) -> Vec<Row> {
    let sigma = f.sigma().ok();
    grid.points()
        .into_iter()
        .map(|z| {
            if z.im > 0.0 {
                return Row::new(z, f.eval(z).ok(), Flag::Interior);
            }
            let on_sigma = sigma.as_ref().is_some_and(|s| s.contains(ExtPoint::Finite(z.re)));
            if on_sigma {
                match f.eval(z) {
                    Ok(ExtComplex::Infinity) => Row::new(z, Some(ExtComplex::Infinity), Flag::Pole),
                    _ => Row::new(z, boundary_value(f, z.re, ladder), Flag::Boundary),
                }
            } else {
                Row::new(z, f.eval(z).ok(), Flag::Real)
            }
        })
        .collect()
}

pub fn eval(spec: &SpecFile, opts: &Overrides) -> Result<(Report, Vec<Row>), CliError> {
    let task = spec.task()?;
    let f = task.function(opts)?;
    let grid = grid_of(opts)?;
    let rows = eval_rows(&f, &grid, &ladder_of(opts)?);
    let mut r = Report::new("eval", spec.task_json());
    r.set("grid", json!(grid.to_string()));
    r.set("rows", serde_json::to_value(&rows).expect("rows serialize"));
    Ok((r, rows))
}

fn krein_json(k: &KreinProduct) -> Value {
    let dto = match k.source() {
        ArcGenerator::Explicit(s) => KreinDto::from_set(s),
        ArcGenerator::CantorComplement(c) => KreinDto {
            cantor: Some(CantorDto { interval: [c.lo, c.hi], depth: c.depth, exterior: c.exterior }),
            tol: Some(k.tol()),
            ..Default::default()
        },
    };
    serde_json::to_value(dto).expect("krein spec serializes")
}

/// A function as a spec fragment, as far as it has one.
pub fn function_json(f: &PickFunction) -> Value {
    match f {
        PickFunction::Rep(rep) => json!({ "nevanlinna": NevanlinnaDto::from_rep(rep) }),
        PickFunction::Composite(c) => {
            let mut p = json!({ "c": c.c, "krein": krein_json(&c.krein) });
            if let Some(e) = &c.exp {
                p["exp"] = serde_json::to_value(ExpDto::from_rep(e)).expect("exp serializes");
            }
            json!({ "product": p })
        }
        PickFunction::BlackBox(b) => json!({ "black_box": b.name, "sigma": closed_set_json(&b.sigma) }),
        PickFunction::Quotient(q) => json!({ "quotient": { "numerator": function_json(&q.num), "divisor": arcset_json(&q.divisor) } }),
    }
}

fn certification_error(r: &mut Report, what: &str, e: Error) -> Result<(), CliError> {
    match e {
        Error::Certification(_) | Error::NotInGamma | Error::NotRegular | Error::TailNotCertified { .. } | Error::NonConvergence(_) | Error::BisectionFailed { .. } => {
            r.checks.push(CheckRow::flag(what, false));
            r.error = Some(e.to_string());
            Ok(())
        }
        other => Err(other.into()),
    }
}

pub fn factor(spec: &SpecFile, opts: &Overrides) -> Result<Report, CliError> {
    let f = spec.task()?.function(opts)?;
    let mut r = Report::new("factor", spec.task_json());
    let fac = match factorize(&f) {
        Ok(fac) => fac,
        Err(e) => {
            certification_error(&mut r, "factorize", e)?;
            return Ok(r);
        }
    };
    r.set("gamma", arcset_json(&fac.gamma));
    r.set("k", json!({ "krein": krein_json(&fac.krein) }));
    r.set("g", function_json(&fac.g));
    r.set("sigma_f", closed_set_json(&fac.sigma_f));
    r.set("sigma_g", closed_set_json(&fac.sigma_g));
    let grid = grid_of(opts)?;
    r.set("g_samples", serde_json::to_value(eval_rows(&fac.g, &grid, &ladder_of(opts)?)).expect("rows serialize"));
    r.checks.extend(fac.posts.iter().map(CheckRow::from));
    if fac.sigma_f.measure() == 0.0 {
        match constant_factor_check(&f) {
            Ok(c) => {
                r.set("c", json!(c.c));
                r.checks.push(CheckRow::new("f = c k", c.max_residual, CONSTANT_TOL));
            }
            Err(e) => certification_error(&mut r, "f = c k", e)?,
        }
    }
    Ok(r)
}

pub fn solve(spec: &SpecFile) -> Result<Report, CliError> {
    let task = spec.task()?;
    let mut r = Report::new("solve", spec.task_json());
    match &task {
        Task::Interp(dto) => match dto.build()? {
            InterpKind::Line(p) => {
                if let Err(v) = check_interlacing(&p) {
                    r.set("interlaced", json!(false));
                    r.checks.push(CheckRow::flag("interlacing", false));
                    r.error = Some(Error::from(v).to_string());
                    return Ok(r);
                }
                r.set("interlaced", json!(true));
                r.checks.push(CheckRow::flag("interlacing", true));
                let f = build_function(&p)?;
                r.set("set", arcset_json(&f.set));
                r.set("function", json!({ "krein": KreinDto::from_set(&f.set) }));
                r.set("extra_poles", Value::Array(f.extra_poles.iter().map(|&q| point_json(q)).collect()));
                r.set("extra_zeros", Value::Array(f.extra_zeros.iter().map(|&q| point_json(q)).collect()));
                r.checks.extend(f.checks.iter().map(CheckRow::from));
            }
            InterpKind::Disk(d) => {
                let (theta, checks) = match disk_interpolate(&d.zeros, &d.poles, &d.singular, d.alpha, d.beta, d.zeta) {
                    Ok(x) => x,
                    Err(e @ Error::InterlacingViolation { .. }) => {
                        r.checks.push(CheckRow::flag("interlacing", false));
                        r.error = Some(e.to_string());
                        return Ok(r);
                    }
                    Err(e) => return Err(e.into()),
                };
                let set = &theta.interpolant.set;
                r.set("set", arcset_json(set));
                r.set("function", json!({ "krein": KreinDto::from_set(set) }));
                let values = |pts: &[Complex64]| -> Result<Value, CliError> {
                    Ok(Value::Array(pts.iter().map(|&w| theta.eval(w).map(complex_json)).collect::<Result<_, _>>()?))
                };
                r.set("theta_on_zeros", values(&d.zeros)?);
                r.set("theta_on_poles", values(&d.poles)?);
                r.checks.extend(checks.iter().map(CheckRow::from));
            }
        },
        Task::Realizable(dto) => {
            let (omega, o) = (dto.omega.build()?, dto.o.build()?);
            match krein_core::interp::realizable_pair(&omega, &o) {
                Ok(res) => {
                    r.set("inside", json!(res.inside));
                    r.set("regular", json!(res.regular));
                    r.set("complement", json!(res.complement));
                    r.set("holds", json!(res.holds()));
                    if let Some(f) = &res.function {
                        r.set("function", function_json(f));
                        r.checks.push(CheckRow::flag("constructed function reproduces the pair", true));
                    }
                }
                Err(e) => certification_error(&mut r, "constructed function reproduces the pair", e)?,
            }
        }
        Task::Boole(dto) => {
            let mu = dto.measure()?;
            let mass = mu.total_mass();
            let mut rows = Vec::new();
            for y in dto.y.values() {
                let s = boole_superlevel_measure(&mu, y)?;
                rows.push(json!({ "y": y, "plus": s.plus, "minus": s.minus, "expected": mass / y }));
                r.checks.push(CheckRow::new(format!("|{{G > {y}}}| = mass/y"), (s.plus - mass / y).abs(), MEASURE_TOL));
                r.checks.push(CheckRow::new(format!("|{{G < -{y}}}| = mass/y"), (s.minus - mass / y).abs(), MEASURE_TOL));
            }
            r.set("mass", json!(mass));
            r.set("levels", Value::Array(rows));
        }
        Task::Letac(dto) => {
            let rep = dto.function.rep()?;
            let [c, d] = dto.interval;
            let len = letac_preimage_length(&rep, c, d)?;
            r.set("length", json!(len));
            r.checks.push(CheckRow::new("preimage length = d - c", (len - (d - c)).abs(), MEASURE_TOL));
        }
        other => return Err(CliError::Input(format!("solve takes a problem spec (interp, realizable, boole, letac), got {}", other.name()))),
    }
    Ok(r)
}
