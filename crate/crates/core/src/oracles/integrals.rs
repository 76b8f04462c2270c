//! Table integrals behind the density and log-moment derivations.
//!
//! | identity   | integral                     | closed form                                 |
//! |------------|------------------------------|---------------------------------------------|
//! | `SechCos`  | ∫₀^∞ sech(ax) cos(xt) dx     | (π/2a) sech(πt/2a)                          |
//! | `Sech2Cos` | ∫₀^∞ sech²(ax) cos(xt) dx    | (πt/2a²) csch(πt/2a)                        |
//! | `LogSech`  | ∫₀^∞ log(1+bz²) sech(cz) dz  | (π/c) F(bπ²/c²)                             |
//! | `LogCsch2` | ∫₀^∞ log(1+bz²) csch²(cz) dz | (2/c)(log y − ψ(y) − 1/(2y)), y = c/(π√b)   |
//!
//! with F(β) = 2 log(Γ(¾ + 1/(2√β)) / Γ(¼ + 1/(2√β))) − log(1/(2√β)).

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::quadrature::{integrate, QuadratureSpec};
use super::{inputs, OracleKind, VerificationRecord};
use crate::distributions::sech;
use crate::error::{out_of_range, Result, UmbraError};
use crate::special::{digamma, ln_gamma};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum IntegralIdentity {
    SechCos,
    Sech2Cos,
    LogSech,
    LogCsch2,
}

impl IntegralIdentity {
    pub const ALL: [IntegralIdentity; 4] = [
        IntegralIdentity::SechCos,
        IntegralIdentity::Sech2Cos,
        IntegralIdentity::LogSech,
        IntegralIdentity::LogCsch2,
    ];

    pub fn id(self) -> &'static str {
        match self {
            IntegralIdentity::SechCos => "integral.sech_cos",
            IntegralIdentity::Sech2Cos => "integral.sech2_cos",
            IntegralIdentity::LogSech => "integral.log_sech",
            IntegralIdentity::LogCsch2 => "integral.log_csch2",
        }
    }

    /// Exponential decay rate of the integrand in units of the scale parameter.
    fn decay(self) -> f64 {
        match self {
            IntegralIdentity::SechCos | IntegralIdentity::LogSech => 1.0,
            IntegralIdentity::Sech2Cos | IntegralIdentity::LogCsch2 => 2.0,
        }
    }
}

/// `param` is a for the cosine transforms and c for the log integrals; the
/// unused one of `b`, `t` is ignored.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegralIdentityCase {
    pub identity: IntegralIdentity,
    pub param: f64,
    pub b: f64,
    pub t: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub abs_err: f64,
}

pub fn sech_cos_closed(a: f64, t: f64) -> f64 {
    PI / (2.0 * a) * sech(PI * t / (2.0 * a))
}

pub fn sech2_cos_closed(a: f64, t: f64) -> f64 {
    let y = PI * t / (2.0 * a);
    if y.abs() < 1e-8 {
        return (1.0 - y * y / 6.0) / a;
    }
    if y.abs() > 700.0 {
        return 0.0;
    }
    PI * t / (2.0 * a * a) / y.sinh()
}

fn log_sech_profile(beta: f64) -> Result<f64> {
    let s = 1.0 / (2.0 * beta.sqrt());
    Ok(2.0 * (ln_gamma(0.75 + s)? - ln_gamma(0.25 + s)?) - s.ln())
}

pub fn log_sech_closed(b: f64, c: f64) -> Result<f64> {
    if b == 0.0 {
        return Ok(0.0);
    }
    Ok(PI / c * log_sech_profile(b * PI * PI / (c * c))?)
}

pub fn log_csch2_closed(b: f64, c: f64) -> Result<f64> {
    if b == 0.0 {
        return Ok(0.0);
    }
    let y = c / (PI * b.sqrt());
    Ok(2.0 / c * (y.ln() - digamma(y)? - 0.5 / y))
}

/// The commonly quoted form without the −1/(2y) term; it exceeds the
/// integral by π√b/c².
pub fn log_csch2_uncorrected(b: f64, c: f64) -> Result<f64> {
    let y = c / (PI * b.sqrt());
    Ok(2.0 / c * (y.ln() - digamma(y)?))
}

fn integrand(identity: IntegralIdentity, p: f64, b: f64, t: f64, z: f64) -> f64 {
    match identity {
        IntegralIdentity::SechCos => sech(p * z) * (z * t).cos(),
        IntegralIdentity::Sech2Cos => {
            let s = sech(p * z);
            s * s * (z * t).cos()
        }
        IntegralIdentity::LogSech => (b * z * z).ln_1p() * sech(p * z),
        IntegralIdentity::LogCsch2 => {
            let y = p * z;
            if y < 1e-6 {
                // log(1+bz²)/sinh²(cz) → b/c² at z = 0
                return b / (p * p) * (1.0 - (b / 2.0 + p * p / 3.0) * z * z);
            }
            if y > 350.0 {
                return 0.0;
            }
            let s = y.sinh();
            (b * z * z).ln_1p() / (s * s)
        }
    }
}

fn quad_half_line<F: Fn(f64) -> f64>(f: &F, decay: f64, q: &QuadratureSpec) -> Result<f64> {
    q.validate()?;
    // same e-folding count as the logistic window [0, R]
    let upper = 2.0 * PI * q.truncation_radius / decay;
    let nodes = q.node_count / 2;
    let coarse: f64 = integrate(f, 0.0, upper, nodes, q.scheme, false);
    let fine: f64 = integrate(f, 0.0, upper, 2 * nodes, q.scheme, false);
    let delta = (fine - coarse).abs();
    let allowed = q.refinement_tol * fine.abs().max(1.0);
    if !(delta <= allowed) {
        return Err(UmbraError::NonConvergence { delta, allowed });
    }
    Ok(fine)
}

fn validate(identity: IntegralIdentity, param: f64, b: f64, t: f64) -> Result<()> {
    if !(param > 0.0) {
        return Err(out_of_range("scale parameter", param, "> 0"));
    }
    match identity {
        IntegralIdentity::SechCos | IntegralIdentity::Sech2Cos => {
            if !t.is_finite() {
                return Err(out_of_range("t", t, "finite"));
            }
        }
        _ => {
            if !(b >= 0.0 && b.is_finite()) {
                return Err(out_of_range("b", b, ">= 0"));
            }
        }
    }
    Ok(())
}

/// Numerical and closed-form sides of one table integral.
pub fn evaluate_integral_identity(
    identity: IntegralIdentity,
    param: f64,
    b: f64,
    t: f64,
    q: &QuadratureSpec,
) -> Result<IntegralIdentityCase> {
    validate(identity, param, b, t)?;
    let rhs = match identity {
        IntegralIdentity::SechCos => sech_cos_closed(param, t),
        IntegralIdentity::Sech2Cos => sech2_cos_closed(param, t),
        IntegralIdentity::LogSech => log_sech_closed(b, param)?,
        IntegralIdentity::LogCsch2 => log_csch2_closed(b, param)?,
    };
    let f = |z: f64| integrand(identity, param, b, t, z);
    let lhs = quad_half_line(&f, identity.decay() * param, q)?;
    Ok(IntegralIdentityCase {
        identity,
        param,
        b,
        t,
        lhs,
        rhs,
        abs_err: (lhs - rhs).abs(),
    })
}

pub fn check_integral_identity(case: &IntegralIdentityCase, tol: f64) -> VerificationRecord {
    let params = match case.identity {
        IntegralIdentity::SechCos | IntegralIdentity::Sech2Cos => {
            inputs([("a", case.param), ("t", case.t)])
        }
        _ => inputs([("b", case.b), ("c", case.param)]),
    };
    VerificationRecord::deterministic(
        case.identity.id(),
        params,
        case.rhs,
        case.lhs,
        OracleKind::Quadrature,
        tol,
    )
}

/// π ∫₀^∞ log(1+bz²) sech²(πz) dz against π (H(b,π) − 4 H(b,2π)), where
/// H(b,c) = ∫₀^∞ log(1+bz²) csch²(cz) dz; both sides by quadrature.
///
/// The identity follows from 1/sinh²(2πz) = ¼ (csch²(πz) − sech²(πz)).
pub fn bisection_identity_check(b: f64, q: &QuadratureSpec, tol: f64) -> Result<VerificationRecord> {
    if !(b >= 0.0 && b.is_finite()) {
        return Err(out_of_range("b", b, ">= 0"));
    }
    let sech2 = |z: f64| {
        let s = sech(PI * z);
        (b * z * z).ln_1p() * s * s
    };
    let lhs = PI * quad_half_line(&sech2, 2.0 * PI, q)?;
    let h = |c: f64| {
        let f = |z: f64| integrand(IntegralIdentity::LogCsch2, c, b, 0.0, z);
        quad_half_line(&f, 2.0 * c, q)
    };
    let rhs = PI * (h(PI)? - 4.0 * h(2.0 * PI)?);
    Ok(VerificationRecord::deterministic(
        "integral.bisection",
        inputs([("b", b)]),
        rhs,
        lhs,
        OracleKind::Quadrature,
        tol,
    ))
}
