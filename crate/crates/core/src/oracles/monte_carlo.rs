//! Monte Carlo estimates of E h(x − ½ + iL).

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::quadrature::{integrand, log_cosh};
use crate::closed_forms::Moment;
use crate::distributions::{sample_stream, SampleSpec, UmbraSpec};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub mean: f64,
    /// Sample standard deviation / √count.
    pub std_err: f64,
    pub count: usize,
}

/// Real part of h at a + iℓ, written out where a closed expression avoids branch cuts.
fn real_value(moment: Moment, a: f64, l: f64) -> f64 {
    match moment {
        Moment::Log => 0.5 * (a * a + l * l).ln(),
        Moment::LogCoshPiL => log_cosh(PI * l),
        _ => integrand(moment, Complex64::new(a, l)).re,
    }
}

/// Sample mean and standard error of Re h(x − ½ + iL) over `s.count` draws.
pub fn expect_monte_carlo(spec: UmbraSpec, moment: Moment, s: SampleSpec) -> Result<McEstimate> {
    let a = spec.offset();
    let mut mean = 0.0;
    let mut m2 = 0.0;
    let mut count = 0usize;
    for l in sample_stream(spec.kind, s)? {
        let v = real_value(moment, a, l);
        count += 1;
        let delta = v - mean;
        mean += delta / count as f64;
        m2 += delta * (v - mean);
    }
    let variance = if count > 1 {
        m2 / (count - 1) as f64
    } else {
        0.0
    };
    Ok(McEstimate {
        mean,
        std_err: (variance / count as f64).sqrt(),
        count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::{Construction, UmbraKind};

    #[test]
    fn second_moment_at_half() {
        // B₂(½) = −1/12
        let s = SampleSpec::new(200_000, 11, Construction::UniformLogit);
        let est = expect_monte_carlo(UmbraSpec::bernoulli(0.5), Moment::Power(2), s).unwrap();
        assert!((est.mean + 1.0 / 12.0).abs() <= 4.0 * est.std_err);
        assert_eq!(est.count, 200_000);
    }

    #[test]
    fn deterministic_under_seed() {
        let s = SampleSpec::new(1000, 5, Construction::CauchyLog);
        let spec = UmbraSpec::new(UmbraKind::Euler, 2.0);
        let a = expect_monte_carlo(spec, Moment::Log, s).unwrap();
        let b = expect_monte_carlo(spec, Moment::Log, s).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn log_real_part_matches_principal_branch() {
        for &(a, l) in &[(0.3, 1.2), (-0.7, -0.4), (-2.0, 0.1)] {
            let direct = Complex64::new(a, l).ln().re;
            assert!((real_value(Moment::Log, a, l) - direct).abs() < 1e-15);
        }
    }
}
