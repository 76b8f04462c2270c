//! Independent numerical engines that recompute the closed forms.
//!
//! * [`quadrature`]: E h(x − ½ + iL) as an integral against the density.
//! * [`monte_carlo`]: the same expectation from seeded samples of L.
//! * [`series`]: Taylor coefficients of the rising-factorial generating
//!   functions, plus the Stirling-sum route.
//! * [`integrals`]: the table integrals the closed forms rest on.
//! * [`suite`]: the catalogue of checks over the standard grid.

use std::collections::BTreeMap;

use serde::{Deserialize, Deserializer, Serialize};

pub mod integrals;
pub mod monte_carlo;
pub mod quadrature;
pub mod series;
pub mod suite;

pub use integrals::{
    bisection_identity_check, check_integral_identity, evaluate_integral_identity,
    IntegralIdentity, IntegralIdentityCase,
};
pub use monte_carlo::{expect_monte_carlo, McEstimate};
pub use quadrature::{expect_quadrature, QuadratureScheme, QuadratureSpec};
pub use series::{genfn_series, pochhammer_stirling_oracle, GenFnSeries, TruncatedSeries};
pub use suite::{catalogue, run_check, run_suite, Check, CheckSpec, Suite, SuiteConfig};

/// Number of standard errors a Monte Carlo estimate may deviate.
pub const MC_SIGMAS: f64 = 4.0;

/// Rounding allowance added to the Monte Carlo bound, relative to
/// max(1, |closed form|); it matters only when the summand is constant.
pub const MC_ROUNDING_FLOOR: f64 = 1e-13;

/// Default tolerance for deterministic oracles (quadrature, series, Stirling).
pub const IDENTITY_TOL: f64 = 1e-8;

/// Bound on the imaginary part of a quadrature of a symmetric integrand.
pub const IMAG_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OracleKind {
    Quadrature,
    MonteCarlo,
    Series,
    StirlingSum,
}

/// One identity check.
///
/// `pass` follows the tolerance policy of `oracle_kind`: deterministic
/// oracles need `abs_err ≤ tolerance · max(1, |closed_form|)` (and, for
/// quadrature, a vanishing imaginary part); Monte Carlo needs
/// `abs_err ≤ tolerance · mc_std_err` (plus a rounding floor) with `tolerance` = [`MC_SIGMAS`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub identity_id: String,
    pub inputs: BTreeMap<String, f64>,
    #[serde(deserialize_with = "nan_if_null")]
    pub closed_form: f64,
    #[serde(deserialize_with = "nan_if_null")]
    pub oracle: f64,
    pub oracle_kind: OracleKind,
    #[serde(deserialize_with = "nan_if_null")]
    pub abs_err: f64,
    #[serde(deserialize_with = "nan_if_null")]
    pub rel_err: f64,
    #[serde(deserialize_with = "nan_if_null")]
    pub tolerance: f64,
    pub mc_std_err: Option<f64>,
    pub oracle_imag: Option<f64>,
    pub seed: Option<u64>,
    pub error: Option<String>,
    pub pass: bool,
}

impl VerificationRecord {
    /// Deterministic comparison under the mixed abs/rel policy.
    pub fn deterministic(
        identity_id: impl Into<String>,
        inputs: BTreeMap<String, f64>,
        closed_form: f64,
        oracle: f64,
        oracle_kind: OracleKind,
        tolerance: f64,
    ) -> Self {
        let abs_err = (closed_form - oracle).abs();
        let pass = abs_err <= tolerance * closed_form.abs().max(1.0);
        VerificationRecord {
            identity_id: identity_id.into(),
            inputs,
            closed_form,
            oracle,
            oracle_kind,
            abs_err,
            rel_err: relative(abs_err, closed_form),
            tolerance,
            mc_std_err: None,
            oracle_imag: None,
            seed: None,
            error: None,
            pass,
        }
    }

    pub fn monte_carlo(
        identity_id: impl Into<String>,
        inputs: BTreeMap<String, f64>,
        closed_form: f64,
        estimate: &McEstimate,
        seed: u64,
    ) -> Self {
        let abs_err = (closed_form - estimate.mean).abs();
        VerificationRecord {
            identity_id: identity_id.into(),
            inputs,
            closed_form,
            oracle: estimate.mean,
            oracle_kind: OracleKind::MonteCarlo,
            abs_err,
            rel_err: relative(abs_err, closed_form),
            tolerance: MC_SIGMAS,
            mc_std_err: Some(estimate.std_err),
            oracle_imag: None,
            seed: Some(seed),
            error: None,
            pass: abs_err <= MC_SIGMAS * estimate.std_err + MC_ROUNDING_FLOOR * closed_form.abs().max(1.0),
        }
    }

    /// A check that could not be carried out.
    pub fn failed(
        identity_id: impl Into<String>,
        inputs: BTreeMap<String, f64>,
        oracle_kind: OracleKind,
        error: impl ToString,
    ) -> Self {
        VerificationRecord {
            identity_id: identity_id.into(),
            inputs,
            closed_form: f64::NAN,
            oracle: f64::NAN,
            oracle_kind,
            abs_err: f64::NAN,
            rel_err: f64::NAN,
            tolerance: f64::NAN,
            mc_std_err: None,
            oracle_imag: None,
            seed: None,
            error: Some(error.to_string()),
            pass: false,
        }
    }

    /// Attaches the quadrature imaginary part; it must vanish for the check to pass.
    pub fn with_imag(mut self, imag: f64) -> Self {
        self.oracle_imag = Some(imag);
        self.pass &= imag.abs() <= IMAG_TOL;
        self
    }
}

/// Non-finite values serialize as `null`; read them back as NaN.
fn nan_if_null<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
    Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN))
}

fn relative(abs_err: f64, reference: f64) -> f64 {
    if reference == 0.0 {
        abs_err
    } else {
        abs_err / reference.abs()
    }
}

/// Builds an inputs map from `(name, value)` pairs.
pub fn inputs<const N: usize>(pairs: [(&str, f64); N]) -> BTreeMap<String, f64> {
    pairs
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixed_policy() {
        let r = VerificationRecord::deterministic("t", inputs([]), 1e6, 1e6 + 5e-3, OracleKind::Series, 1e-8);
        assert!(r.pass);
        let r = VerificationRecord::deterministic("t", inputs([]), 1e-3, 1e-3 + 2e-8, OracleKind::Series, 1e-8);
        assert!(!r.pass);
        assert!(!r.clone().with_imag(0.0).pass);
        let r = VerificationRecord::deterministic("t", inputs([]), 0.0, 0.0, OracleKind::Quadrature, 1e-8);
        assert!(r.pass && !r.with_imag(1e-9).pass);
    }

    #[test]
    fn monte_carlo_policy() {
        let est = McEstimate {
            mean: 1.0,
            std_err: 0.1,
            count: 100,
        };
        assert!(VerificationRecord::monte_carlo("m", inputs([]), 1.39, &est, 1).pass);
        assert!(!VerificationRecord::monte_carlo("m", inputs([]), 1.41, &est, 1).pass);
        let exact = McEstimate {
            mean: 0.1 + 0.2,
            std_err: 0.0,
            count: 10,
        };
        assert!(VerificationRecord::monte_carlo("m", inputs([]), 0.3, &exact, 1).pass);
        assert!(!VerificationRecord::monte_carlo("m", inputs([]), 0.3 + 1e-9, &exact, 1).pass);
    }
}
