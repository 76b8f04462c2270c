use thiserror::Error;

/// Errors raised by the special functions, closed forms and oracles.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum UmbraError {
    #[error("argument {x} is a pole (nonpositive integer)")]
    PoleArgument { x: f64 },

    #[error("polygamma order {k} is not supported (max {max})")]
    UnsupportedOrder { k: u32, max: u32 },

    #[error("{what} = {value} is outside the supported range {range}")]
    OutOfRange {
        what: &'static str,
        value: String,
        range: &'static str,
    },

    #[error("moment of order -{k} diverges at x = {x}")]
    DivergentMoment { k: u32, x: f64 },

    #[error("sampler construction {construction} cannot generate the {kind} distribution")]
    IncompatibleConstruction {
        construction: &'static str,
        kind: &'static str,
    },

    #[error("integrand {integrand} is singular on the integration path at x = {x}")]
    SingularIntegrand { integrand: String, x: f64 },

    #[error("quadrature did not converge: refinement changed the result by {delta:e} (allowed {allowed:e})")]
    NonConvergence { delta: f64, allowed: f64 },

    #[error("no closed form for {0}")]
    NoClosedForm(String),

    #[error("integer overflow building {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, UmbraError>;

pub(crate) fn out_of_range(
    what: &'static str,
    value: impl ToString,
    range: &'static str,
) -> UmbraError {
    UmbraError::OutOfRange {
        what,
        value: value.to_string(),
        range,
    }
}
