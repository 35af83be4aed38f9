//! JSON task files.

use krein_core::extreal::CantorComplement;
use krein_core::factor::{compose_in_class, Composite, ExpRep, PickFunction, PsiPiece};
use krein_core::interp::InterpProblem;
use krein_core::krein::KreinProduct;
use krein_core::nevanlinna::{z_plus_i, z_plus_sqrt, AcPiece, ClosedSet, Measure, NevanlinnaRep};
use krein_core::{Arc, ArcSet, Complex64, ExtPoint};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;

/// The only accepted format version.
pub const VERSION: u32 = 1;

/// A real number or one of the strings `"inf"`, `"-inf"`, `"+inf"`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Real(f64),
    Tag(InfTag),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum InfTag {
    #[serde(rename = "inf", alias = "+inf", alias = "infinity")]
    Plus,
    #[serde(rename = "-inf")]
    Minus,
}

impl Num {
    pub fn value(self) -> f64 {
        match self {
            Num::Real(x) => x,
            Num::Tag(InfTag::Plus) => f64::INFINITY,
            Num::Tag(InfTag::Minus) => f64::NEG_INFINITY,
        }
    }

    /// `±∞` both name the single point at infinity.
    pub fn point(self) -> ExtPoint {
        match self {
            Num::Real(x) => ExtPoint::Finite(x),
            Num::Tag(_) => ExtPoint::Infinity,
        }
    }

    pub fn from_point(p: ExtPoint) -> Num {
        match p {
            ExtPoint::Finite(x) => Num::Real(x),
            ExtPoint::Infinity => Num::Tag(InfTag::Plus),
        }
    }
}

/// `{"arcs": [[b, a], ...]}`; `[x, x]` is the line punctured at `x` and
/// `"full": true` the whole line.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArcSetDto {
    #[serde(default)]
    pub arcs: Vec<[Num; 2]>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub full: bool,
}

impl ArcSetDto {
    pub fn build(&self) -> Result<ArcSet, CliError> {
        if self.full {
            if !self.arcs.is_empty() {
                return Err(CliError::Input("\"full\" excludes \"arcs\"".into()));
            }
            return Ok(ArcSet::full());
        }
        let arcs = self
            .arcs
            .iter()
            .map(|[b, a]| {
                let (b, a) = (b.point(), a.point());
                if b.same(a) {
                    Ok(Arc::punctured(b))
                } else {
                    Arc::new(b, a).map_err(CliError::from)
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ArcSet::normalize(arcs))
    }

    pub fn from_set(set: &ArcSet) -> Self {
        if set.is_full() {
            return ArcSetDto { arcs: Vec::new(), full: true };
        }
        let arcs = set.arcs().iter().map(|j| if j.is_punctured() { [Num::from_point(j.b()); 2] } else { [Num::from_point(j.b()), Num::from_point(j.a())] }).collect();
        ArcSetDto { arcs, full: false }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CantorDto {
    pub interval: [f64; 2],
    #[serde(default)]
    pub depth: Option<u32>,
    /// Also include the arc through `∞` outside the interval.
    #[serde(default)]
    pub exterior: bool,
}

/// `{"arcs": ...}` or `{"cantor": ...}` with truncation settings.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KreinDto {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arcs: Option<Vec<[Num; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub full: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cantor: Option<CantorDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_factors: Option<usize>,
}

impl KreinDto {
    pub fn from_set(set: &ArcSet) -> Self {
        let d = ArcSetDto::from_set(set);
        KreinDto { arcs: Some(d.arcs), full: d.full.then_some(true), ..Default::default() }
    }

    pub fn build(&self, opts: &Overrides) -> Result<KreinProduct, CliError> {
        let mut k = match (&self.arcs, &self.cantor) {
            (Some(_), Some(_)) => return Err(CliError::Input("krein spec takes either \"arcs\" or \"cantor\"".into())),
            (None, Some(c)) => {
                let depth = opts.depth.or(c.depth);
                KreinProduct::cantor(CantorComplement::new(c.interval[0], c.interval[1], depth, c.exterior)?)
            }
            (arcs, None) => {
                let set = ArcSetDto { arcs: arcs.clone().unwrap_or_default(), full: self.full.unwrap_or(false) };
                KreinProduct::explicit(set.build()?)
            }
        };
        if let Some(t) = opts.tol.or(self.tol) {
            if !(t > 0.0) {
                return Err(CliError::Input("tolerance must be positive".into()));
            }
            k = k.with_tol(t);
        }
        if let Some(n) = self.max_factors {
            k = k.with_max_factors(n);
        }
        Ok(k)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AcDto {
    pub interval: [f64; 2],
    pub density: f64,
}

/// `αz + β + ∫ (1 + zt)/(t − z) dρ(t)`, or a named built-in function.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NevanlinnaDto {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<String>,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub alpha: f64,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub beta: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub atoms: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub ac: Vec<AcDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cantor_depth: Option<u32>,
}

fn is_zero(x: &f64) -> bool {
    *x == 0.0
}

/// Functions available by name, with their supports.
pub const BUILTINS: [&str; 2] = ["z_plus_i", "z_plus_sqrt"];

impl NevanlinnaDto {
    pub fn from_rep(rep: &NevanlinnaRep) -> Self {
        NevanlinnaDto {
            builtin: None,
            alpha: rep.alpha,
            beta: rep.beta,
            atoms: rep.rho.explicit_atoms().iter().map(|&(t, w)| [t, w]).collect(),
            ac: rep.rho.ac_pieces().iter().map(|p| AcDto { interval: [p.l, p.r], density: p.density }).collect(),
            cantor_depth: rep.rho.cantor_depth(),
        }
    }

    pub fn rep(&self) -> Result<NevanlinnaRep, CliError> {
        if self.builtin.is_some() {
            return Err(CliError::Input("a built-in function has no representation data".into()));
        }
        let ac = self.ac.iter().map(|p| AcPiece { l: p.interval[0], r: p.interval[1], density: p.density }).collect();
        let mu = Measure::new(self.atoms.iter().map(|a| (a[0], a[1])).collect(), ac, self.cantor_depth)?;
        Ok(NevanlinnaRep::new(self.alpha, self.beta, mu)?)
    }

    pub fn build(&self) -> Result<PickFunction, CliError> {
        let Some(name) = &self.builtin else {
            return Ok(PickFunction::Rep(self.rep()?));
        };
        if *self != (NevanlinnaDto { builtin: Some(name.clone()), ..Default::default() }) {
            return Err(CliError::Input("\"builtin\" excludes the other fields".into()));
        }
        match name.as_str() {
            "z_plus_i" => Ok(PickFunction::black_box(name.clone(), ClosedSet::new(vec![], vec![(f64::NEG_INFINITY, f64::INFINITY)], true)?, z_plus_i)),
            "z_plus_sqrt" => Ok(PickFunction::black_box(name.clone(), ClosedSet::new(vec![], vec![(-1.0, 1.0)], true)?, z_plus_sqrt)),
            other => Err(CliError::Input(format!("unknown builtin {other:?}; expected one of {BUILTINS:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PsiDto {
    pub interval: [Num; 2],
    pub value: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpDto {
    #[serde(default)]
    pub gamma: f64,
    #[serde(default)]
    pub psi: Vec<PsiDto>,
}

impl ExpDto {
    pub fn build(&self) -> Result<ExpRep, CliError> {
        let pieces = self.psi.iter().map(|p| PsiPiece { l: p.interval[0].value(), r: p.interval[1].value(), value: p.value }).collect();
        Ok(ExpRep::new(self.gamma, pieces)?)
    }

    pub fn from_rep(e: &ExpRep) -> Self {
        let num = |x: f64| if x.is_finite() { Num::Real(x) } else if x > 0.0 { Num::Tag(InfTag::Plus) } else { Num::Tag(InfTag::Minus) };
        ExpDto { gamma: e.gamma(), psi: e.pieces().iter().map(|p| PsiDto { interval: [num(p.l), num(p.r)], value: p.value }).collect() }
    }
}

/// `c · k · e^h`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductDto {
    #[serde(default = "one")]
    pub c: f64,
    #[serde(default)]
    pub krein: KreinDto,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exp: Option<ExpDto>,
}

fn one() -> f64 {
    1.0
}

impl ProductDto {
    pub fn build(&self, opts: &Overrides) -> Result<PickFunction, CliError> {
        if !(self.c > 0.0 && self.c.is_finite()) {
            return Err(CliError::Input("constant c must be positive".into()));
        }
        let krein = self.krein.build(opts)?;
        let exp = self.exp.as_ref().map(ExpDto::build).transpose()?;
        if let (Some(e), krein_core::ArcGenerator::Explicit(set)) = (&exp, krein.source()) {
            compose_in_class(set, e.clone())?;
        }
        Ok(PickFunction::Composite(Composite { c: self.c, krein, exp }))
    }
}

/// A point of the line (number or `"inf"`) or of the plane (`[re, im]`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointDto {
    Line(Num),
    Plane([f64; 2]),
}

/// Prescribed zeros and poles on the line, or on the circle when `alpha`,
/// `beta` and `zeta` are given.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InterpDto {
    #[serde(default)]
    pub zeros: Vec<PointDto>,
    #[serde(default)]
    pub poles: Vec<PointDto>,
    #[serde(default)]
    pub singular: Vec<PointDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zeta: Option<[f64; 2]>,
}

/// The circle variant of an interpolation problem.
#[derive(Debug, Clone, PartialEq)]
pub struct DiskProblem {
    pub zeros: Vec<Complex64>,
    pub poles: Vec<Complex64>,
    pub singular: Vec<Complex64>,
    pub alpha: Complex64,
    pub beta: Complex64,
    pub zeta: Complex64,
}

pub enum InterpKind {
    Line(InterpProblem),
    Disk(DiskProblem),
}

impl InterpDto {
    pub fn build(&self) -> Result<InterpKind, CliError> {
        let c = |p: [f64; 2]| Complex64::new(p[0], p[1]);
        match (self.alpha, self.beta, self.zeta) {
            (None, None, None) => {
                let line = |v: &[PointDto]| {
                    v.iter()
                        .map(|p| match p {
                            PointDto::Line(n) => Ok(n.point()),
                            PointDto::Plane(_) => Err(CliError::Input("line problems take real points or \"inf\"".into())),
                        })
                        .collect::<Result<Vec<_>, _>>()
                };
                Ok(InterpKind::Line(InterpProblem::new(line(&self.zeros)?, line(&self.poles)?, line(&self.singular)?)?))
            }
            (Some(a), Some(b), Some(z)) => {
                let plane = |v: &[PointDto]| {
                    v.iter()
                        .map(|p| match p {
                            PointDto::Plane(q) => Ok(c(*q)),
                            PointDto::Line(_) => Err(CliError::Input("circle problems take [re, im] points".into())),
                        })
                        .collect::<Result<Vec<_>, _>>()
                };
                Ok(InterpKind::Disk(DiskProblem {
                    zeros: plane(&self.zeros)?,
                    poles: plane(&self.poles)?,
                    singular: plane(&self.singular)?,
                    alpha: c(a),
                    beta: c(b),
                    zeta: c(z),
                }))
            }
            _ => Err(CliError::Input("circle problems need all of alpha, beta and zeta".into())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RealizableDto {
    pub omega: ArcSetDto,
    pub o: ArcSetDto,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OneOrMany {
    One(f64),
    Many(Vec<f64>),
}

impl OneOrMany {
    pub fn values(&self) -> Vec<f64> {
        match self {
            OneOrMany::One(x) => vec![*x],
            OneOrMany::Many(v) => v.clone(),
        }
    }
}

/// Atomic measure `Σ w δ_t` and levels `y`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BooleDto {
    pub atoms: Vec<[f64; 2]>,
    pub y: OneOrMany,
}

impl BooleDto {
    pub fn measure(&self) -> Result<Measure, CliError> {
        Ok(Measure::atomic(self.atoms.iter().map(|a| (a[0], a[1])).collect())?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LetacDto {
    pub function: NevanlinnaDto,
    pub interval: [f64; 2],
}

/// Settings that the command line may override.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Overrides {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl Overrides {
    /// `self` with every field that `over` sets replaced.
    pub fn merged(&self, over: &Overrides) -> Overrides {
        Overrides {
            grid: over.grid.clone().or_else(|| self.grid.clone()),
            eps: over.eps.clone().or_else(|| self.eps.clone()),
            depth: over.depth.or(self.depth),
            tol: over.tol.or(self.tol),
            seed: over.seed.or(self.seed),
        }
    }
}

/// A task file: a version tag, exactly one task and optional settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nevanlinna: Option<NevanlinnaDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub krein: Option<KreinDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub product: Option<ProductDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interp: Option<InterpDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub realizable: Option<RealizableDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boole: Option<BooleDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub letac: Option<LetacDto>,
    #[serde(default)]
    pub options: Overrides,
}

/// The single task of a spec file.
#[derive(Debug, Clone, PartialEq)]
pub enum Task {
    Nevanlinna(NevanlinnaDto),
    Krein(KreinDto),
    Product(ProductDto),
    Interp(InterpDto),
    Realizable(RealizableDto),
    Boole(BooleDto),
    Letac(LetacDto),
}

impl Task {
    pub fn name(&self) -> &'static str {
        match self {
            Task::Nevanlinna(_) => "nevanlinna",
            Task::Krein(_) => "krein",
            Task::Product(_) => "product",
            Task::Interp(_) => "interp",
            Task::Realizable(_) => "realizable",
            Task::Boole(_) => "boole",
            Task::Letac(_) => "letac",
        }
    }

    pub fn is_function(&self) -> bool {
        matches!(self, Task::Nevanlinna(_) | Task::Krein(_) | Task::Product(_))
    }

    /// The function of a function task.
    pub fn function(&self, opts: &Overrides) -> Result<PickFunction, CliError> {
        match self {
            Task::Nevanlinna(n) => n.build(),
            Task::Krein(k) => Ok(PickFunction::Composite(Composite { c: 1.0, krein: k.build(opts)?, exp: None })),
            Task::Product(p) => p.build(opts),
            other => Err(CliError::Input(format!("{} is a problem spec, not a function spec", other.name()))),
        }
    }
}

impl SpecFile {
    pub fn parse(text: &str) -> Result<SpecFile, CliError> {
        let spec: SpecFile = serde_json::from_str(text).map_err(|e| CliError::Input(format!("spec: {e}")))?;
        if spec.version != VERSION {
            return Err(CliError::Input(format!("unsupported spec version {}; expected {VERSION}", spec.version)));
        }
        spec.task()?;
        Ok(spec)
    }

    pub fn task(&self) -> Result<Task, CliError> {
        let mut found = Vec::new();
        if let Some(x) = &self.nevanlinna {
            found.push(Task::Nevanlinna(x.clone()));
        }
        if let Some(x) = &self.krein {
            found.push(Task::Krein(x.clone()));
        }
        if let Some(x) = &self.product {
            found.push(Task::Product(x.clone()));
        }
        if let Some(x) = &self.interp {
            found.push(Task::Interp(x.clone()));
        }
        if let Some(x) = &self.realizable {
            found.push(Task::Realizable(x.clone()));
        }
        if let Some(x) = &self.boole {
            found.push(Task::Boole(x.clone()));
        }
        if let Some(x) = &self.letac {
            found.push(Task::Letac(x.clone()));
        }
        match found.len() {
            1 => Ok(found.remove(0)),
            0 => Err(CliError::Input("spec has no task".into())),
            n => Err(CliError::Input(format!("spec has {n} tasks; exactly one is allowed"))),
        }
    }

    /// The task section as JSON, echoed in reports.
    pub fn task_json(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("spec serializes");
        if let Value::Object(m) = &mut v {
            m.remove("version");
            m.remove("options");
        }
        v
    }
}
