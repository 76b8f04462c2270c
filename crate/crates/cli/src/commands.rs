use std::time::Instant;

use rayon::prelude::*;
use umbra_core::oracles::{catalogue, expect_quadrature, run_check, QuadratureSpec, SuiteConfig};
use umbra_core::closed_forms::closed_form;
use umbra_core::distributions::sample;
use umbra_core::{Moment, SampleSpec, UmbraKind, UmbraSpec};

use crate::args::{EvalArgs, SampleArgs, VerifyArgs};
use crate::grid::build_grid;
use crate::report::{Command, ConfigEcho, EvalRow, Record, ReportDocument, SampleRow};
use crate::CliError;

/// A `--func` value with the umbra implied by a suffixed alias, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FuncSpec {
    pub base: FuncBase,
    pub umbra: Option<UmbraKind>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FuncBase {
    Power,
    InvPow,
    Log,
    LogSin,
    LogCosh,
    Pochhammer,
}

impl FuncSpec {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        let lower = s.trim().to_ascii_lowercase();
        let base = |name: &str| -> Option<FuncBase> {
            Some(match name {
                "power" | "pow" => FuncBase::Power,
                "invpow" | "inv" => FuncBase::InvPow,
                "log" => FuncBase::Log,
                "logsin" => FuncBase::LogSin,
                "logcosh" => FuncBase::LogCosh,
                "pochhammer" | "poch" => FuncBase::Pochhammer,
                _ => return None,
            })
        };
        if let Some(b) = base(&lower) {
            return Ok(FuncSpec { base: b, umbra: None });
        }
        let suffixed = |suffix: char, kind: UmbraKind| {
            lower
                .strip_suffix(suffix)
                .and_then(base)
                .map(|b| FuncSpec { base: b, umbra: Some(kind) })
        };
        suffixed('b', UmbraKind::Bernoulli)
            .or_else(|| suffixed('e', UmbraKind::Euler))
            .ok_or_else(|| CliError::Usage(format!("unknown function '{s}'")))
    }

    pub fn moment(&self, k: Option<u32>, n: Option<u32>) -> Result<Moment, CliError> {
        let need_n = |what: &str| n.ok_or_else(|| CliError::Usage(format!("--n is required for {what}")));
        Ok(match self.base {
            FuncBase::Power => Moment::Power(need_n("power")?),
            FuncBase::Pochhammer => Moment::Pochhammer(need_n("pochhammer")?),
            FuncBase::InvPow => Moment::InvPower(k.ok_or_else(|| CliError::Usage("--k is required for invpow".into()))?),
            FuncBase::Log => Moment::Log,
            FuncBase::LogSin => Moment::LogSinHalfPi,
            FuncBase::LogCosh => Moment::LogCoshPiL,
        })
    }
}

fn resolve_umbra(flag: Option<UmbraKind>, func: &FuncSpec) -> Result<UmbraKind, CliError> {
    match (flag, func.umbra) {
        (Some(a), Some(b)) if a != b => Err(CliError::Usage(format!("--umbra {a} conflicts with the function alias ({b})"))),
        (Some(a), _) => Ok(a),
        (None, Some(b)) => Ok(b),
        (None, None) => Ok(UmbraKind::Bernoulli),
    }
}

fn eval_row(spec: UmbraSpec, moment: Moment, check: bool) -> EvalRow {
    let mut row = EvalRow {
        umbra: spec.kind.to_string(),
        func: moment.to_string(),
        x: spec.x,
        value: None,
        branch: None,
        formula_id: None,
        oracle: None,
        abs_err: None,
        error: None,
    };
    match closed_form(spec, moment) {
        Ok(r) => {
            row.value = Some(r.value);
            row.branch = Some(r.branch);
            row.formula_id = Some(r.formula_id);
        }
        Err(e) => {
            row.error = Some(e.to_string());
            return row;
        }
    }
    if check {
        let mut q = QuadratureSpec::default();
        if moment == Moment::Log && spec.offset() == 0.0 {
            q = q.with_split();
        }
        match expect_quadrature(spec, moment, &q) {
            Ok(v) => {
                row.oracle = Some(v.re);
                row.abs_err = row.value.map(|c| (c - v.re).abs());
            }
            Err(e) => row.error = Some(format!("oracle: {e}")),
        }
    }
    row
}

/// `eval` and `table`: one row per grid point, in grid order.
pub fn run_eval(args: &EvalArgs, command: Command) -> Result<ReportDocument, CliError> {
    let func = FuncSpec::parse(&args.func)?;
    let kind = resolve_umbra(args.umbra.map(Into::into), &func)?;
    let moment = func.moment(args.k, args.n)?;
    let grid = build_grid(&args.x, &args.x_range);
    if grid.is_empty() {
        return Err(CliError::Usage("no evaluation points; give --x or --x-range".into()));
    }
    let rows: Vec<Record> = grid
        .par_iter()
        .map(|&x| Record::Eval(eval_row(UmbraSpec::new(kind, x), moment, args.check)))
        .collect();
    let config = ConfigEcho {
        command,
        umbra: Some(kind.to_string()),
        func: Some(moment.to_string()),
        x_grid: grid,
        suite: None,
        tol: None,
        seed: None,
        samples: None,
        construction: None,
        quadrature: args.check.then(QuadratureSpec::default),
    };
    Ok(ReportDocument::new(config, rows))
}

pub fn run_verify(args: &VerifyArgs) -> Result<ReportDocument, CliError> {
    if !(args.tol > 0.0) {
        return Err(CliError::Usage(format!("--tol must be positive, got {}", args.tol)));
    }
    if args.samples < 2 {
        return Err(CliError::Usage("--samples must be at least 2".into()));
    }
    let cfg = SuiteConfig {
        tol: args.tol,
        seed: args.seed,
        samples: args.samples,
        quadrature: QuadratureSpec::default(),
    };
    let checks = catalogue(args.suite.into());
    let run = || -> Vec<Record> {
        checks
            .par_iter()
            .map(|c| Record::Verification(run_check(c, &cfg)))
            .collect()
    };
    let records = if args.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(args.threads)
            .build()
            .map_err(|e| CliError::Usage(e.to_string()))?
            .install(run)
    } else {
        run()
    };
    let config = ConfigEcho {
        command: Command::Verify,
        umbra: None,
        func: None,
        x_grid: Vec::new(),
        suite: Some(umbra_core::oracles::Suite::from(args.suite).to_string()),
        tol: Some(cfg.tol),
        seed: Some(cfg.seed),
        samples: Some(cfg.samples),
        construction: None,
        quadrature: Some(cfg.quadrature),
    };
    Ok(ReportDocument::new(config, records))
}

pub fn run_sample(args: &SampleArgs) -> Result<ReportDocument, CliError> {
    let kind: UmbraKind = args.umbra.into();
    let construction = args
        .construction
        .map(Into::into)
        .unwrap_or_else(|| umbra_core::Construction::default_for(kind));
    let draws = sample(kind, SampleSpec::new(args.samples, args.seed, construction))?;
    let records = draws
        .into_iter()
        .enumerate()
        .map(|(index, value)| Record::Sample(SampleRow { index, value }))
        .collect();
    let config = ConfigEcho {
        command: Command::Sample,
        umbra: Some(kind.to_string()),
        func: None,
        x_grid: Vec::new(),
        suite: None,
        tol: None,
        seed: Some(args.seed),
        samples: Some(args.samples),
        construction: Some(format!("{construction:?}")),
        quadrature: None,
    };
    Ok(ReportDocument::new(config, records))
}

/// Runs `f` and records its duration when `timing` is set.
pub fn timed<F>(timing: bool, f: F) -> Result<ReportDocument, CliError>
where
    F: FnOnce() -> Result<ReportDocument, CliError>,
{
    let start = Instant::now();
    let mut doc = f()?;
    if timing {
        doc.wall_time_seconds = Some(start.elapsed().as_secs_f64());
    }
    Ok(doc)
}
