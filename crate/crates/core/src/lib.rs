//! Nonlinear moments of the Bernoulli and Euler umbrae.
//!
//! The umbrae 𝔅(x) and 𝔈(x) act on a function h through an expectation,
//! h(𝔅(x)) = E h(x − ½ + i L_B), where L_B is logistic and L_E (for 𝔈)
//! follows the hyperbolic secant law. [`closed_forms`] evaluates the known
//! nonlinear moments (log, negative powers, rising factorials, log sin) in
//! closed form and [`oracles`] recomputes each one independently by
//! quadrature, Monte Carlo sampling, power series and Stirling sums.

pub mod closed_forms;
pub mod distributions;
pub mod error;
pub mod oracles;
pub mod polynomials;
pub mod special;

pub use closed_forms::{Branch, ClosedFormResult, FormulaId, Moment};
pub use distributions::{ComplexPoint, Construction, SampleSpec, UmbraKind, UmbraSpec};
pub use error::{Result, UmbraError};
pub use oracles::{
    IntegralIdentity, IntegralIdentityCase, OracleKind, QuadratureScheme, QuadratureSpec,
    VerificationRecord,
};
pub use polynomials::PolySequence;
