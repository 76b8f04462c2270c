//! Closed-form nonlinear moments of 𝔅(x) and 𝔈(x).
//!
//! Every function records which side of a piecewise formula produced the
//! value. With a = x − ½, the log and inverse-power moments depend on x only
//! through |a| (up to a sign for odd powers) and jump at x = ½.

use std::f64::consts::LN_2;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::distributions::{UmbraKind, UmbraSpec};
use crate::error::{out_of_range, Result, UmbraError};
use crate::polynomials::{bernoulli_poly, euler_poly};
use crate::special::{digamma, factorial, ln_gamma, polygamma, rising_factorial};

/// Half-width of the band around a removable singularity of the Bernoulli
/// rising factorial inside which the regularized formula is used.
pub const REMOVABLE_GUARD: f64 = 1e-6;

/// A nonlinear function h whose umbral moment h(𝔘(x)) is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Moment {
    /// zⁿ
    Power(u32),
    /// z^{−k}
    InvPower(u32),
    /// log z (real part)
    Log,
    /// log sin(πz/2) (real part)
    LogSinHalfPi,
    /// log cosh(π Im z), the intermediate of the log-sine moment
    LogCoshPiL,
    /// Rising factorial (z)ₙ
    Pochhammer(u32),
}

impl fmt::Display for Moment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Moment::Power(n) => write!(f, "power({n})"),
            Moment::InvPower(k) => write!(f, "invpow({k})"),
            Moment::Log => f.write_str("log"),
            Moment::LogSinHalfPi => f.write_str("logsin"),
            Moment::LogCoshPiL => f.write_str("logcosh"),
            Moment::Pochhammer(n) => write!(f, "pochhammer({n})"),
        }
    }
}

impl FromStr for Moment {
    type Err = String;

    /// Parses `log`, `logsin`, `logcosh`, `power(3)`, `invpow(2)`, `pochhammer(4)`.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let s = s.trim();
        let arg = |name: &str| -> Option<std::result::Result<u32, String>> {
            let rest = s.strip_prefix(name)?.strip_prefix('(')?.strip_suffix(')')?;
            Some(rest.trim().parse::<u32>().map_err(|e| e.to_string()))
        };
        match s {
            "log" => return Ok(Moment::Log),
            "logsin" => return Ok(Moment::LogSinHalfPi),
            "logcosh" => return Ok(Moment::LogCoshPiL),
            _ => {}
        }
        if let Some(n) = arg("power") {
            return n.map(Moment::Power);
        }
        if let Some(k) = arg("invpow") {
            return k.map(Moment::InvPower);
        }
        if let Some(n) = arg("pochhammer") {
            return n.map(Moment::Pochhammer);
        }
        Err(format!("unknown moment '{s}'"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    /// x < ½ side of a piecewise formula.
    Left,
    /// x > ½ side.
    Right,
    /// Exactly x = ½.
    Midpoint,
    /// Analytic limit at a removable singularity.
    LimitPoint,
    /// Formula without a case split.
    Regular,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FormulaId {
    BernoulliPolynomial,
    EulerPolynomial,
    LogBernoulli,
    LogEuler,
    InvPowerBernoulli,
    InvPowerEuler,
    LogSinHalfPiBernoulli,
    LogCoshPiLBernoulli,
    PochhammerBernoulli,
    PochhammerEuler,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClosedFormResult {
    pub value: f64,
    pub branch: Branch,
    pub formula_id: FormulaId,
}

impl ClosedFormResult {
    fn new(value: f64, branch: Branch, formula_id: FormulaId) -> Self {
        ClosedFormResult {
            value,
            branch,
            formula_id,
        }
    }
}

fn side(x: f64) -> Branch {
    if x > 0.5 {
        Branch::Right
    } else if x < 0.5 {
        Branch::Left
    } else {
        Branch::Midpoint
    }
}

/// Bₙ(x) = 𝔅(x)ⁿ.
pub fn power_bernoulli(n: u32, x: f64) -> Result<ClosedFormResult> {
    Ok(ClosedFormResult::new(
        bernoulli_poly(n as usize, x)?,
        Branch::Regular,
        FormulaId::BernoulliPolynomial,
    ))
}

/// Eₙ(x) = 𝔈(x)ⁿ.
pub fn power_euler(n: u32, x: f64) -> Result<ClosedFormResult> {
    Ok(ClosedFormResult::new(
        euler_poly(n as usize, x)?,
        Branch::Regular,
        FormulaId::EulerPolynomial,
    ))
}

/// log 𝔅(x) = ψ(½ + |x − ½|).
pub fn log_moment_bernoulli(x: f64) -> ClosedFormResult {
    let value = digamma(0.5 + (x - 0.5).abs()).expect("argument is at least 1/2");
    ClosedFormResult::new(value, side(x), FormulaId::LogBernoulli)
}

/// log 𝔈(x) = log 2 + 2 log Γ(¾ + ½|x − ½|) − 2 log Γ(¼ + ½|x − ½|).
pub fn log_moment_euler(x: f64) -> ClosedFormResult {
    let a = 0.5 * (x - 0.5).abs();
    let upper = ln_gamma(0.75 + a).expect("positive argument");
    let lower = ln_gamma(0.25 + a).expect("positive argument");
    ClosedFormResult::new(
        LN_2 + 2.0 * (upper - lower),
        side(x),
        FormulaId::LogEuler,
    )
}

fn check_inverse_order(k: u32, x: f64) -> Result<()> {
    if k == 0 {
        return Err(out_of_range("inverse power order", 0, ">= 1"));
    }
    if x == 0.5 && k >= 2 {
        return Err(UmbraError::DivergentMoment { k, x });
    }
    Ok(())
}

/// 𝔅^{−k}(x).
///
/// x > ½: (−1)^{k−1}/(k−1)! ψ⁽ᵏ⁾(x); x < ½: −ψ⁽ᵏ⁾(1 − x)/(k−1)!;
/// x = ½: 0 for k = 1 (principal value), divergent for k ≥ 2.
pub fn inv_moment_bernoulli(k: u32, x: f64) -> Result<ClosedFormResult> {
    check_inverse_order(k, x)?;
    let branch = side(x);
    let scale = 1.0 / factorial(k - 1);
    let value = match branch {
        Branch::Right => {
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            sign * scale * polygamma(k, x)?
        }
        Branch::Left => -scale * polygamma(k, 1.0 - x)?,
        _ => 0.0,
    };
    Ok(ClosedFormResult::new(value, branch, FormulaId::InvPowerBernoulli))
}

/// 𝔈^{−k}(x).
///
/// x > ½: (−½)^{k−1}/(k−1)! (ψ⁽ᵏ⁻¹⁾((x+1)/2) − ψ⁽ᵏ⁻¹⁾(x/2));
/// x < ½: (½)^{k−1}/(k−1)! (ψ⁽ᵏ⁻¹⁾((1−x)/2) − ψ⁽ᵏ⁻¹⁾(1 − x/2));
/// x = ½: 0 for k = 1, divergent for k ≥ 2.
pub fn inv_moment_euler(k: u32, x: f64) -> Result<ClosedFormResult> {
    check_inverse_order(k, x)?;
    let branch = side(x);
    let order = k - 1;
    let half_pow = 0.5f64.powi(order as i32) / factorial(order);
    let value = match branch {
        Branch::Right => {
            let sign = if order % 2 == 0 { 1.0 } else { -1.0 };
            sign * half_pow * (polygamma(order, 0.5 * (x + 1.0))? - polygamma(order, 0.5 * x)?)
        }
        Branch::Left => {
            half_pow * (polygamma(order, 0.5 * (1.0 - x))? - polygamma(order, 1.0 - 0.5 * x)?)
        }
        _ => 0.0,
    };
    Ok(ClosedFormResult::new(value, branch, FormulaId::InvPowerEuler))
}

/// log sin(π𝔅/2) = ½ − log 2.
pub fn log_sin_half_pi_bernoulli() -> ClosedFormResult {
    ClosedFormResult::new(0.5 - LN_2, Branch::Regular, FormulaId::LogSinHalfPiBernoulli)
}

/// E log cosh(πL_B) = 1 − log 2; log sin(π𝔅/2) = −½ log 2 + ½ of this.
pub fn log_cosh_pi_lb() -> ClosedFormResult {
    ClosedFormResult::new(1.0 - LN_2, Branch::Regular, FormulaId::LogCoshPiLBernoulli)
}

/// ψ(y) + 1/(y + m), finite near y = −m.
fn digamma_without_pole(y: f64, m: u32) -> Result<f64> {
    // ψ(y) = ψ(y + m + 1) − Σ_{i=0}^{m} 1/(y + i)
    let mut acc = digamma(y + m as f64 + 1.0)?;
    for i in (0..m).rev() {
        acc -= 1.0 / (y + i as f64);
    }
    Ok(acc)
}

/// (𝔅(x))ₙ = (x−1)_{n+1}/(n+1) · (ψ(x+n) − ψ(x−1)).
///
/// The formula is a polynomial in x. Its removable singularities sit at
/// x₀ = 1 − m, m = 0..=n, where the zero factor (x − 1 + m) of (x−1)_{n+1}
/// meets the pole of ψ(x−1); inside the guard band the pole is split off,
/// leaving the residue term Q(x)/(n+1) with Q = (x−1)_{n+1}/(x−1+m). At
/// x = 1 this is n!/(n+1). When x + n is itself a nonpositive
/// integer both digammas are singular and their difference is taken from
/// the recurrence, Σ_{j=0}^{n} 1/(x − 1 + j).
pub fn pochhammer_bernoulli(n: u32, x: f64) -> Result<ClosedFormResult> {
    let y = x - 1.0;
    let product = rising_factorial(y, n + 1);
    let scale = 1.0 / (n as f64 + 1.0);

    let m = (-y).round();
    if m >= 0.0 && m <= n as f64 && (y + m).abs() < REMOVABLE_GUARD {
        let m = m as u32;
        let q: f64 = (0..=n)
            .filter(|&i| i != m)
            .map(|i| y + i as f64)
            .product();
        let regular = if product == 0.0 {
            0.0
        } else {
            product * (digamma(x + n as f64)? - digamma_without_pole(y, m)?)
        };
        return Ok(ClosedFormResult::new(
            scale * (regular + q),
            Branch::LimitPoint,
            FormulaId::PochhammerBernoulli,
        ));
    }

    let top = x + n as f64;
    let near_double_pole = top <= 0.0 && (top - top.round()).abs() < REMOVABLE_GUARD;
    let difference = if near_double_pole {
        (0..=n).map(|j| 1.0 / (y + j as f64)).sum::<f64>()
    } else {
        digamma(top)? - digamma(y)?
    };
    Ok(ClosedFormResult::new(
        scale * product * difference,
        Branch::Regular,
        FormulaId::PochhammerBernoulli,
    ))
}

/// (𝔈(x))ₙ = n!/2ⁿ Σ_{k=0}^{n} (x−1)ₖ 2ᵏ/k!.
pub fn pochhammer_euler(n: u32, x: f64) -> ClosedFormResult {
    let y = x - 1.0;
    let mut term = 1.0; // (y)ₖ 2ᵏ / k!
    let mut sum = 1.0;
    for k in 1..=n {
        term *= (y + (k - 1) as f64) * 2.0 / k as f64;
        sum += term;
    }
    let value = factorial(n) / 2f64.powi(n as i32) * sum;
    ClosedFormResult::new(value, Branch::Regular, FormulaId::PochhammerEuler)
}

/// Closed form of h(𝔘(x)) for any supported (umbra, moment) pair.
pub fn closed_form(spec: UmbraSpec, moment: Moment) -> Result<ClosedFormResult> {
    use UmbraKind::*;
    let x = spec.x;
    match (spec.kind, moment) {
        (Bernoulli, Moment::Power(n)) => power_bernoulli(n, x),
        (Euler, Moment::Power(n)) => power_euler(n, x),
        (Bernoulli, Moment::Log) => Ok(log_moment_bernoulli(x)),
        (Euler, Moment::Log) => Ok(log_moment_euler(x)),
        (Bernoulli, Moment::InvPower(k)) => inv_moment_bernoulli(k, x),
        (Euler, Moment::InvPower(k)) => inv_moment_euler(k, x),
        (Bernoulli, Moment::Pochhammer(n)) => pochhammer_bernoulli(n, x),
        (Euler, Moment::Pochhammer(n)) => Ok(pochhammer_euler(n, x)),
        (Bernoulli, Moment::LogSinHalfPi) if x == 0.0 => Ok(log_sin_half_pi_bernoulli()),
        (Bernoulli, Moment::LogCoshPiL) => Ok(log_cosh_pi_lb()),
        (kind, moment) => Err(UmbraError::NoClosedForm(format!("{moment} of {kind}({x})"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::{zeta_int, EULER_GAMMA};
    use std::f64::consts::PI;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn log_bernoulli_values() {
        assert!(close(log_moment_bernoulli(1.0).value, -EULER_GAMMA, 1e-15));
        assert!(close(log_moment_bernoulli(0.0).value, -EULER_GAMMA, 1e-15));
        let mid = log_moment_bernoulli(0.5);
        assert_eq!(mid.branch, Branch::Midpoint);
        assert!(close(mid.value, -1.963_510_026_021_423_5, 1e-15));
        assert_eq!(log_moment_bernoulli(0.2).branch, Branch::Left);
    }

    #[test]
    fn log_euler_values() {
        assert!(close(log_moment_euler(1.0).value, (2.0 / PI).ln(), 1e-14));
        assert_eq!(log_moment_euler(0.0).value, log_moment_euler(1.0).value);
        assert!(close(log_moment_euler(0.5).value, -1.476_335_965_973_619, 1e-14));
    }

    #[test]
    fn inverse_bernoulli_values() {
        let r = inv_moment_bernoulli(1, 1.0).unwrap();
        assert!(close(r.value, PI * PI / 6.0, 1e-15));
        assert_eq!(r.branch, Branch::Right);
        assert!(close(
            inv_moment_bernoulli(2, 1.0).unwrap().value,
            2.404_113_806_319_188_5,
            1e-14
        ));
        let mid = inv_moment_bernoulli(1, 0.5).unwrap();
        assert_eq!((mid.value, mid.branch), (0.0, Branch::Midpoint));
        assert!(matches!(
            inv_moment_bernoulli(2, 0.5),
            Err(UmbraError::DivergentMoment { k: 2, .. })
        ));
        assert!(inv_moment_bernoulli(0, 1.0).is_err());
        for k in 1..=6 {
            let v = inv_moment_bernoulli(k, 1.0).unwrap().value;
            assert!(close(v, k as f64 * zeta_int(k + 1).unwrap(), 1e-13), "k = {k}");
        }
    }

    #[test]
    fn inverse_euler_values() {
        assert!(close(inv_moment_euler(1, 1.0).unwrap().value, 2.0 * LN_2, 1e-15));
        assert_eq!(inv_moment_euler(1, 0.5).unwrap().value, 0.0);
        assert!(close(inv_moment_euler(2, 1.0).unwrap().value, PI * PI / 6.0, 1e-14));
        assert!(inv_moment_euler(3, 0.5).is_err());
    }

    #[test]
    fn log_sine_values() {
        let fin = log_sin_half_pi_bernoulli().value;
        let mid = log_cosh_pi_lb().value;
        assert!(close(fin, -0.193_147_180_559_945_3, 1e-15));
        assert!(close(mid, 0.306_852_819_440_054_7, 1e-15));
        assert!(close(fin, -0.5 * LN_2 + 0.5 * mid, 1e-15));
    }

    #[test]
    fn pochhammer_bernoulli_values() {
        let r = pochhammer_bernoulli(2, 1.0).unwrap();
        assert_eq!(r.branch, Branch::LimitPoint);
        assert!(close(r.value, 2.0 / 3.0, 1e-15));
        for &x in &[-3.3, 0.0, 0.37, 2.0, 5.5] {
            assert!(close(pochhammer_bernoulli(1, x).unwrap().value, x - 0.5, 1e-13));
        }
        assert!(close(pochhammer_bernoulli(0, 0.3).unwrap().value, 1.0, 1e-14));
        // Σₖ c(3,k) Bₖ(2.5) = 2·2 + 3·(6.25 − 2.5 + 1/6) + (15.625 − 9.375 + 1.25)
        let oracle = 2.0 * 2.0 + 3.0 * (6.25 - 2.5 + 1.0 / 6.0) + (15.625 - 9.375 + 1.25);
        assert!(close(pochhammer_bernoulli(3, 2.5).unwrap().value, oracle, 1e-13));
        assert_eq!(oracle, 23.25);
    }

    #[test]
    fn pochhammer_bernoulli_is_continuous_through_guard_band() {
        // (𝔅(x))₃ = ((y)₄)'/4 with y = x − 1; check both sides of x₀ = 0 and x₀ = −2.
        let exact = |x: f64| {
            let y: f64 = x - 1.0;
            (4.0 * y.powi(3) + 18.0 * y * y + 22.0 * y + 6.0) / 4.0
        };
        for &x0 in &[1.0, 0.0, -1.0, -2.0] {
            for &d in &[0.0, 5e-7, -5e-7, 2e-6, -2e-6, 1e-3] {
                let x = x0 + d;
                let v = pochhammer_bernoulli(3, x).unwrap().value;
                assert!(close(v, exact(x), 1e-9), "x = {x}: {v} vs {}", exact(x));
            }
        }
        // both digammas singular: x + n a nonpositive integer
        for &x in &[-3.0, -7.0] {
            assert!(close(pochhammer_bernoulli(3, x).unwrap().value, exact(x), 1e-12));
        }
    }

    #[test]
    fn pochhammer_euler_values() {
        for &x in &[-2.0, 0.3, 4.0] {
            assert!(close(pochhammer_euler(1, x).value, x - 0.5, 1e-15));
        }
        for n in 0..=10u32 {
            let expect = factorial(n) / 2f64.powi(n as i32);
            assert!(close(pochhammer_euler(n, 1.0).value, expect, 1e-15));
        }
        assert!(close(pochhammer_euler(3, 2.0).value, 45.0 / 4.0, 1e-15));
    }

    #[test]
    fn dispatch_and_parse() {
        assert!(closed_form(UmbraSpec::euler(0.0), Moment::LogSinHalfPi).is_err());
        assert!(closed_form(UmbraSpec::bernoulli(0.3), Moment::LogSinHalfPi).is_err());
        assert!(closed_form(UmbraSpec::bernoulli(0.0), Moment::LogSinHalfPi).is_ok());
        for m in [
            Moment::Power(3),
            Moment::InvPower(2),
            Moment::Log,
            Moment::LogSinHalfPi,
            Moment::LogCoshPiL,
            Moment::Pochhammer(7),
        ] {
            assert_eq!(m.to_string().parse::<Moment>().unwrap(), m);
        }
        assert!("power(x)".parse::<Moment>().is_err());
    }
}
