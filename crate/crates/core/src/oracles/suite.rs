//! The catalogue of identity checks run by `verify`.
//!
//! Every check is independent and owns its RNG (seeded from the master seed
//! and the check's position in the full catalogue), so subsets and parallel
//! runs reproduce the records of a full sequential run.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::integrals::{bisection_identity_check, check_integral_identity, evaluate_integral_identity, IntegralIdentity};
use super::monte_carlo::expect_monte_carlo;
use super::quadrature::{expect_quadrature, QuadratureSpec};
use super::series::{genfn_series, pochhammer_stirling_oracle};
use super::{inputs, OracleKind, VerificationRecord, IDENTITY_TOL};
use crate::closed_forms::{closed_form, Moment};
use crate::distributions::{derive_seed, Construction, SampleSpec, UmbraKind, UmbraSpec};
use crate::error::Result;

/// x ∈ {−2, −¾, 0, ¼, ½ − δ, ½ + δ, 1, 3/2, 3} with δ = 10⁻³.
pub const STANDARD_GRID: [f64; 9] = [-2.0, -0.75, 0.0, 0.25, 0.499, 0.501, 1.0, 1.5, 3.0];

/// Extra points where the Bernoulli rising factorial has removable singularities.
pub const REMOVABLE_POINTS: [f64; 3] = [1.0, 0.0, -1.0];

pub const POWER_N_MAX: u32 = 12;
pub const INV_K_MAX: u32 = 6;
pub const POCHHAMMER_N_MAX: u32 = 10;

/// Sample count floor for the log-sine and log-cosh estimates.
pub const LOG_SINE_SAMPLES: usize = 1_000_000;

/// Highest power or rising-factorial order estimated by Monte Carlo. Beyond
/// it the summands have stretched-exponential tails and the sample standard
/// error is too unreliable for a 4σ rule; quadrature still covers every order.
pub const MC_POLY_N_MAX: u32 = 5;

/// Inverse moments are only estimated by Monte Carlo when |x − ½| is at
/// least this; closer to ½ the estimator has no usable variance.
pub const MC_INVERSE_MIN_OFFSET: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Moments,
    Log,
    Inverse,
    LogSine,
    Pochhammer,
    Integrals,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::All,
        Suite::Moments,
        Suite::Log,
        Suite::Inverse,
        Suite::LogSine,
        Suite::Pochhammer,
        Suite::Integrals,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Moments => "moments",
            Suite::Log => "log",
            Suite::Inverse => "inverse",
            Suite::LogSine => "logsine",
            Suite::Pochhammer => "pochhammer",
            Suite::Integrals => "integrals",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| format!("unknown suite '{s}'"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    /// Tolerance of deterministic checks.
    pub tol: f64,
    pub seed: u64,
    /// Draws per Monte Carlo check.
    pub samples: usize,
    pub quadrature: QuadratureSpec,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            tol: IDENTITY_TOL,
            seed: 42,
            samples: 100_000,
            quadrature: QuadratureSpec::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Check {
    Quadrature { spec: UmbraSpec, moment: Moment, split: bool },
    MonteCarlo { spec: UmbraSpec, moment: Moment, min_samples: usize },
    /// Closed form against the generating-function coefficients.
    PochhammerSeries { kind: UmbraKind, n: u32, x: f64 },
    /// Closed form against the Stirling sum.
    PochhammerStirling { kind: UmbraKind, n: u32, x: f64 },
    /// Generating function against Stirling sum, without the closed form.
    SeriesStirling { kind: UmbraKind, n: u32, x: f64 },
    Integral { identity: IntegralIdentity, param: f64, b: f64, t: f64 },
    Bisection { b: f64 },
}

/// A check and its position in the full catalogue.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CheckSpec {
    pub index: u64,
    pub suite: Suite,
    pub check: Check,
}

fn moment_params(spec: UmbraSpec, moment: Moment) -> std::collections::BTreeMap<String, f64> {
    match moment {
        Moment::Power(n) | Moment::Pochhammer(n) => inputs([("x", spec.x), ("n", n as f64)]),
        Moment::InvPower(k) => inputs([("x", spec.x), ("k", k as f64)]),
        _ => inputs([("x", spec.x)]),
    }
}

fn moment_id(spec: UmbraSpec, moment: Moment) -> String {
    let name = match moment {
        Moment::Power(_) => "power",
        Moment::InvPower(_) => "invpow",
        Moment::Log => "log",
        Moment::LogSinHalfPi => "logsin",
        Moment::LogCoshPiL => "logcosh",
        Moment::Pochhammer(_) => "pochhammer",
    };
    format!("{}.{}", spec.kind, name)
}

impl CheckSpec {
    /// Identity id reported in the record.
    pub fn identity_id(&self) -> String {
        match self.check {
            Check::Quadrature { spec, moment, .. } | Check::MonteCarlo { spec, moment, .. } => {
                moment_id(spec, moment)
            }
            Check::PochhammerSeries { kind, .. } => format!("{kind}.pochhammer.series"),
            Check::PochhammerStirling { kind, .. } => format!("{kind}.pochhammer.stirling"),
            Check::SeriesStirling { kind, .. } => format!("{kind}.pochhammer.series_vs_stirling"),
            Check::Integral { identity, .. } => identity.id().to_string(),
            Check::Bisection { .. } => "integral.bisection".to_string(),
        }
    }

    pub fn seed(&self, master: u64) -> u64 {
        derive_seed(master, self.index)
    }
}

fn full_catalogue() -> Vec<(Suite, Check)> {
    let mut out = Vec::new();
    let kinds = UmbraKind::ALL;

    for kind in kinds {
        for &x in &STANDARD_GRID {
            let spec = UmbraSpec::new(kind, x);
            for n in 0..=POWER_N_MAX {
                out.push((Suite::Moments, Check::Quadrature { spec, moment: Moment::Power(n), split: false }));
            }
            for n in 1..=MC_POLY_N_MAX {
                out.push((Suite::Moments, Check::MonteCarlo { spec, moment: Moment::Power(n), min_samples: 0 }));
            }
        }
    }

    for kind in kinds {
        for &x in &STANDARD_GRID {
            let spec = UmbraSpec::new(kind, x);
            out.push((Suite::Log, Check::Quadrature { spec, moment: Moment::Log, split: false }));
            out.push((Suite::Log, Check::MonteCarlo { spec, moment: Moment::Log, min_samples: 0 }));
        }
        let mid = UmbraSpec::new(kind, 0.5);
        out.push((Suite::Log, Check::Quadrature { spec: mid, moment: Moment::Log, split: true }));
        out.push((Suite::Log, Check::MonteCarlo { spec: mid, moment: Moment::Log, min_samples: 0 }));
    }

    for kind in kinds {
        for &x in &STANDARD_GRID {
            let spec = UmbraSpec::new(kind, x);
            for k in 1..=INV_K_MAX {
                let moment = Moment::InvPower(k);
                out.push((Suite::Inverse, Check::Quadrature { spec, moment, split: false }));
                if spec.offset().abs() >= MC_INVERSE_MIN_OFFSET {
                    out.push((Suite::Inverse, Check::MonteCarlo { spec, moment, min_samples: 0 }));
                }
            }
        }
    }

    let origin = UmbraSpec::bernoulli(0.0);
    out.push((Suite::LogSine, Check::Quadrature { spec: origin, moment: Moment::LogSinHalfPi, split: false }));
    out.push((Suite::LogSine, Check::MonteCarlo { spec: origin, moment: Moment::LogSinHalfPi, min_samples: LOG_SINE_SAMPLES }));
    out.push((Suite::LogSine, Check::Quadrature { spec: origin, moment: Moment::LogCoshPiL, split: false }));
    out.push((Suite::LogSine, Check::MonteCarlo { spec: origin, moment: Moment::LogCoshPiL, min_samples: LOG_SINE_SAMPLES }));

    for kind in kinds {
        let mut grid = STANDARD_GRID.to_vec();
        if kind == UmbraKind::Bernoulli {
            for p in REMOVABLE_POINTS {
                if !grid.contains(&p) {
                    grid.push(p);
                }
            }
        }
        for &x in &grid {
            let spec = UmbraSpec::new(kind, x);
            for n in 0..=POCHHAMMER_N_MAX {
                let moment = Moment::Pochhammer(n);
                out.push((Suite::Pochhammer, Check::PochhammerSeries { kind, n, x }));
                out.push((Suite::Pochhammer, Check::PochhammerStirling { kind, n, x }));
                out.push((Suite::Pochhammer, Check::SeriesStirling { kind, n, x }));
                out.push((Suite::Pochhammer, Check::Quadrature { spec, moment, split: false }));
                if (1..=MC_POLY_N_MAX).contains(&n) {
                    out.push((Suite::Pochhammer, Check::MonteCarlo { spec, moment, min_samples: 0 }));
                }
            }
        }
    }

    for identity in [IntegralIdentity::SechCos, IntegralIdentity::Sech2Cos] {
        for &t in &[0.5, 1.0, 2.0, 5.0] {
            out.push((Suite::Integrals, Check::Integral { identity, param: PI, b: 0.0, t }));
        }
    }
    for identity in [IntegralIdentity::LogSech, IntegralIdentity::LogCsch2] {
        for &b in &[0.25, 1.0, 4.0] {
            for &c in &[PI, 2.0 * PI] {
                out.push((Suite::Integrals, Check::Integral { identity, param: c, b, t: 0.0 }));
            }
        }
    }
    for &b in &[0.0, 0.25, 1.0, 4.0] {
        out.push((Suite::Integrals, Check::Bisection { b }));
    }
    out
}

/// Checks belonging to `suite`, in catalogue order.
pub fn catalogue(suite: Suite) -> Vec<CheckSpec> {
    full_catalogue()
        .into_iter()
        .enumerate()
        .filter(|(_, (s, _))| suite == Suite::All || *s == suite)
        .map(|(i, (s, check))| CheckSpec {
            index: i as u64,
            suite: s,
            check,
        })
        .collect()
}

fn closed_value(spec: UmbraSpec, moment: Moment) -> Result<f64> {
    Ok(closed_form(spec, moment)?.value)
}

fn try_run(c: &CheckSpec, cfg: &SuiteConfig) -> Result<VerificationRecord> {
    let id = c.identity_id();
    let record = match c.check {
        Check::Quadrature { spec, moment, split } => {
            let q = if split { cfg.quadrature.with_split() } else { cfg.quadrature };
            let closed = closed_value(spec, moment)?;
            let v = expect_quadrature(spec, moment, &q)?;
            VerificationRecord::deterministic(id, moment_params(spec, moment), closed, v.re, OracleKind::Quadrature, cfg.tol)
                .with_imag(v.im)
        }
        Check::MonteCarlo { spec, moment, min_samples } => {
            let closed = closed_value(spec, moment)?;
            let seed = c.seed(cfg.seed);
            let s = SampleSpec::new(cfg.samples.max(min_samples), seed, Construction::default_for(spec.kind));
            let est = expect_monte_carlo(spec, moment, s)?;
            VerificationRecord::monte_carlo(id, moment_params(spec, moment), closed, &est, seed)
        }
        Check::PochhammerSeries { kind, n, x } => {
            let spec = UmbraSpec::new(kind, x);
            let closed = closed_value(spec, Moment::Pochhammer(n))?;
            let series = genfn_series(kind, x, n as usize)?;
            let oracle = series.pochhammer(n as usize).unwrap_or(f64::NAN);
            VerificationRecord::deterministic(id, inputs([("x", x), ("n", n as f64)]), closed, oracle, OracleKind::Series, cfg.tol)
        }
        Check::PochhammerStirling { kind, n, x } => {
            let spec = UmbraSpec::new(kind, x);
            let closed = closed_value(spec, Moment::Pochhammer(n))?;
            let oracle = pochhammer_stirling_oracle(kind, n as usize, x)?;
            VerificationRecord::deterministic(id, inputs([("x", x), ("n", n as f64)]), closed, oracle, OracleKind::StirlingSum, cfg.tol)
        }
        Check::SeriesStirling { kind, n, x } => {
            let stirling = pochhammer_stirling_oracle(kind, n as usize, x)?;
            let series = genfn_series(kind, x, n as usize)?;
            let oracle = series.pochhammer(n as usize).unwrap_or(f64::NAN);
            VerificationRecord::deterministic(id, inputs([("x", x), ("n", n as f64)]), stirling, oracle, OracleKind::Series, cfg.tol)
        }
        Check::Integral { identity, param, b, t } => {
            let case = evaluate_integral_identity(identity, param, b, t, &cfg.quadrature)?;
            check_integral_identity(&case, cfg.tol)
        }
        Check::Bisection { b } => bisection_identity_check(b, &cfg.quadrature, cfg.tol)?,
    };
    Ok(record)
}

fn oracle_kind(check: &Check) -> OracleKind {
    match check {
        Check::Quadrature { .. } | Check::Integral { .. } | Check::Bisection { .. } => OracleKind::Quadrature,
        Check::MonteCarlo { .. } => OracleKind::MonteCarlo,
        Check::PochhammerSeries { .. } | Check::SeriesStirling { .. } => OracleKind::Series,
        Check::PochhammerStirling { .. } => OracleKind::StirlingSum,
    }
}

fn check_inputs(check: &Check) -> std::collections::BTreeMap<String, f64> {
    match *check {
        Check::Quadrature { spec, moment, .. } | Check::MonteCarlo { spec, moment, .. } => moment_params(spec, moment),
        Check::PochhammerSeries { n, x, .. }
        | Check::PochhammerStirling { n, x, .. }
        | Check::SeriesStirling { n, x, .. } => inputs([("x", x), ("n", n as f64)]),
        Check::Integral { identity, param, b, t } => match identity {
            IntegralIdentity::SechCos | IntegralIdentity::Sech2Cos => inputs([("a", param), ("t", t)]),
            _ => inputs([("b", b), ("c", param)]),
        },
        Check::Bisection { b } => inputs([("b", b)]),
    }
}

/// Runs one check; errors become failed records.
pub fn run_check(c: &CheckSpec, cfg: &SuiteConfig) -> VerificationRecord {
    try_run(c, cfg).unwrap_or_else(|e| {
        VerificationRecord::failed(c.identity_id(), check_inputs(&c.check), oracle_kind(&c.check), e)
    })
}

/// Runs a whole suite sequentially.
pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Vec<VerificationRecord> {
    catalogue(suite).iter().map(|c| run_check(c, cfg)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_keep_catalogue_indices() {
        let all = catalogue(Suite::All);
        let poch = catalogue(Suite::Pochhammer);
        assert!(!poch.is_empty() && poch.len() < all.len());
        for c in &poch {
            assert_eq!(all[c.index as usize], *c);
            assert!(c.identity_id().contains("pochhammer"));
        }
        let total: usize = Suite::ALL[1..].iter().map(|s| catalogue(*s).len()).sum();
        assert_eq!(total, all.len());
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn integrals_suite_passes() {
        let records = run_suite(Suite::Integrals, &SuiteConfig::default());
        assert_eq!(records.len(), 8 + 12 + 4);
        for r in &records {
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn errors_become_failed_records() {
        let c = CheckSpec {
            index: 0,
            suite: Suite::Inverse,
            check: Check::Quadrature {
                spec: UmbraSpec::bernoulli(0.5),
                moment: Moment::InvPower(2),
                split: false,
            },
        };
        let r = run_check(&c, &SuiteConfig::default());
        assert!(!r.pass && r.error.is_some());
        assert_eq!(r.inputs["k"], 2.0);
    }
}
