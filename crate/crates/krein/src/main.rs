use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use krein::grid::parse_eps;
use krein::report::rows_to_csv;
use krein::run::{eval, factor, solve};
use krein::spec::Overrides;
use krein::suites::{run_suite, SUITES};
use krein::{CliError, Report, SpecFile};

#[derive(Parser)]
#[command(name = "krein", version, about = "Evaluate, factor and construct analytic self-maps of the upper half-plane")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a function spec on a grid.
    Eval(Common),
    /// Factor a function as a Kreĭn product times a positive remainder.
    Factor(Common),
    /// Run an invariant suite.
    Check {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
        suite: String,
        #[command(flatten)]
        common: Common,
    },
    /// Solve an interp, realizable, boole or letac problem.
    Solve(Common),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct Common {
    /// JSON spec file.
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// "a:b:n" or "box:re1:re2:im1:im2:n".
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<String>,
    /// Comma-separated ε ladder, or 0 to evaluate on the axis.
    #[arg(long, allow_hyphen_values = true)]
    eps: Option<String>,
    /// Depth of Cantor generators.
    #[arg(long)]
    depth: Option<u32>,
    /// Truncation tolerance of infinite products.
    #[arg(long)]
    tol: Option<f64>,
    /// Seed for random instances.
    #[arg(long)]
    seed: Option<u64>,
    /// Add wall-clock time to the report.
    #[arg(long)]
    timing: bool,
}

impl Common {
    fn overrides(&self) -> Result<Overrides, CliError> {
        Ok(Overrides {
            grid: self.grid.clone(),
            eps: self.eps.as_deref().map(parse_eps).transpose()?,
            depth: self.depth,
            tol: self.tol,
            seed: self.seed,
        })
    }

    fn load(&self) -> Result<Option<SpecFile>, CliError> {
        self.spec.as_ref().map(|p| SpecFile::parse(&fs::read_to_string(p).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?)).transpose()
    }

    fn require(&self) -> Result<SpecFile, CliError> {
        self.load()?.ok_or_else(|| CliError::Input("--spec is required".into()))
    }

    fn settings(&self, spec: Option<&SpecFile>) -> Result<Overrides, CliError> {
        let base = spec.map(|s| s.options.clone()).unwrap_or_default();
        Ok(base.merged(&self.overrides()?))
    }
}

fn emit(common: &Common, text: &str) -> Result<(), CliError> {
    match &common.out {
        Some(p) => fs::write(p, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn execute(cli: Cli) -> Result<bool, CliError> {
    let start = Instant::now();
    let (common, report, rows) = match &cli.command {
        Command::Eval(c) => {
            let spec = c.require()?;
            let (r, rows) = eval(&spec, &c.settings(Some(&spec))?)?;
            (c, r, Some(rows))
        }
        Command::Factor(c) => {
            let spec = c.require()?;
            (c, factor(&spec, &c.settings(Some(&spec))?)?, None)
        }
        Command::Check { suite, common } => {
            let spec = common.load()?;
            (common, run_suite(suite, spec.as_ref(), &common.settings(spec.as_ref())?)?, None)
        }
        Command::Solve(c) => {
            let spec = c.require()?;
            (c, solve(&spec)?, None)
        }
    };
    let mut report: Report = report;
    if common.timing {
        report.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    let text = match (common.format, rows) {
        (Format::Csv, Some(rows)) => rows_to_csv(&rows),
        (Format::Csv, None) => report.to_csv(),
        (Format::Json, _) => report.to_json(),
    };
    emit(common, &text)?;
    Ok(report.passed())
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("krein: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
