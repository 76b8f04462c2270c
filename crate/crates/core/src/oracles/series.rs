//! Rising-factorial moments from their generating functions and from
//! Stirling sums.
//!
//! Σₙ (𝔅(x))ₙ tⁿ/n! = −(1 − t)^{−(x−1)} log(1 − t)/t and
//! Σₙ (𝔈(x))ₙ tⁿ/n! = (1 − t)^{−(x−1)} / (1 − t/2). Both are expanded with
//! truncated power-series arithmetic; (𝔘(x))ₙ = n! cₙ.

use std::ops::{Add, Mul};

use serde::{Deserialize, Serialize};

use crate::distributions::UmbraKind;
use crate::error::{out_of_range, Result};
use crate::polynomials::{bernoulli_poly, euler_poly};
use crate::special::{factorial, StirlingTable};

/// Highest order accepted by [`genfn_series`].
pub const GENFN_MAX_ORDER: usize = 20;

/// Σ cᵢ tⁱ truncated after t^order.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<f64>,
}

impl TruncatedSeries {
    pub fn new(mut coeffs: Vec<f64>, order: usize) -> Self {
        coeffs.resize(order + 1, 0.0);
        TruncatedSeries { coeffs }
    }

    pub fn constant(c: f64, order: usize) -> Self {
        TruncatedSeries::new(vec![c], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn scale(&self, s: f64) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// 1/f, requires f₀ ≠ 0.
    pub fn recip(&self) -> Self {
        let n = self.order();
        let f = &self.coeffs;
        let mut g = vec![0.0; n + 1];
        g[0] = 1.0 / f[0];
        for k in 1..=n {
            let acc: f64 = (1..=k).map(|j| f[j] * g[k - j]).sum();
            g[k] = -acc / f[0];
        }
        TruncatedSeries { coeffs: g }
    }

    /// log f, requires f₀ = 1.
    pub fn ln(&self) -> Self {
        let n = self.order();
        let f = &self.coeffs;
        debug_assert!((f[0] - 1.0).abs() < 1e-15);
        // f · (log f)' = f'
        let mut l = vec![0.0; n + 1];
        for k in 1..=n {
            let inner: f64 = (1..k).map(|j| j as f64 * l[j] * f[k - j]).sum();
            l[k] = f[k] - inner / k as f64;
        }
        TruncatedSeries { coeffs: l }
    }

    /// exp f, requires f₀ = 0.
    pub fn exp(&self) -> Self {
        let n = self.order();
        let f = &self.coeffs;
        debug_assert!(f[0] == 0.0);
        // g' = f' g
        let mut g = vec![0.0; n + 1];
        g[0] = 1.0;
        for k in 1..=n {
            let acc: f64 = (1..=k).map(|j| j as f64 * f[j] * g[k - j]).sum();
            g[k] = acc / k as f64;
        }
        TruncatedSeries { coeffs: g }
    }

    /// f / t, requires f₀ = 0; the order drops by one.
    pub fn div_t(&self) -> Self {
        debug_assert!(self.coeffs[0] == 0.0);
        TruncatedSeries {
            coeffs: self.coeffs[1..].to_vec(),
        }
    }

    pub fn truncate(&self, order: usize) -> Self {
        TruncatedSeries::new(self.coeffs[..=order.min(self.order())].to_vec(), order)
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let n = self.order().min(rhs.order());
        let coeffs = (0..=n)
            .map(|k| (0..=k).map(|j| self.coeffs[j] * rhs.coeffs[k - j]).sum())
            .collect();
        TruncatedSeries { coeffs }
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let n = self.order().min(rhs.order());
        TruncatedSeries {
            coeffs: (0..=n).map(|k| self.coeffs[k] + rhs.coeffs[k]).collect(),
        }
    }
}

/// Taylor coefficients c₀..c_order of a rising-factorial generating function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenFnSeries {
    pub order: usize,
    pub coefficients: Vec<f64>,
}

impl GenFnSeries {
    /// (𝔘(x))ₙ = n! cₙ.
    pub fn pochhammer(&self, n: usize) -> Option<f64> {
        self.coefficients.get(n).map(|c| factorial(n as u32) * c)
    }
}

pub fn genfn_series(kind: UmbraKind, x: f64, order: usize) -> Result<GenFnSeries> {
    if order > GENFN_MAX_ORDER {
        return Err(out_of_range("series order", order, "0..=20"));
    }
    // one spare order for the division by t
    let work = order + 1;
    let one_minus_t = TruncatedSeries::new(vec![1.0, -1.0], work);
    let log_one_minus_t = one_minus_t.ln();
    // (1 − t)^{−(x−1)} = exp(−(x − 1) log(1 − t))
    let power = log_one_minus_t.scale(-(x - 1.0)).exp();
    let phi = match kind {
        UmbraKind::Bernoulli => {
            let kernel = log_one_minus_t.scale(-1.0).div_t();
            &power.truncate(order) * &kernel
        }
        UmbraKind::Euler => {
            let kernel = TruncatedSeries::new(vec![1.0, -0.5], order).recip();
            &power.truncate(order) * &kernel
        }
    };
    Ok(GenFnSeries {
        order,
        coefficients: phi.coeffs().to_vec(),
    })
}

/// (𝔘(x))ₙ = Σₖ c(n, k) 𝔘(x)ᵏ with 𝔘(x)ᵏ = Bₖ(x) or Eₖ(x).
pub fn pochhammer_stirling_oracle(kind: UmbraKind, n: usize, x: f64) -> Result<f64> {
    let row = StirlingTable::shared().row_f64(n)?;
    let mut acc = 0.0;
    for (k, c) in row.iter().enumerate().rev() {
        if *c == 0.0 {
            continue;
        }
        let moment = match kind {
            UmbraKind::Bernoulli => bernoulli_poly(k, x)?,
            UmbraKind::Euler => euler_poly(k, x)?,
        };
        acc += c * moment;
    }
    Ok(acc)
}
