use proptest::prelude::*;
use num_traits::Zero;
use std::f64::consts::LN_2;

use umbra_core::closed_forms::{
    inv_moment_bernoulli, inv_moment_euler, log_moment_bernoulli, log_moment_euler,
    pochhammer_bernoulli, pochhammer_euler,
};
use umbra_core::oracles::{genfn_series, pochhammer_stirling_oracle};
use umbra_core::polynomials::{bernoulli_poly, euler_number, euler_poly};
use umbra_core::special::{digamma, factorial, ln_gamma, polygamma, rising_factorial, stirling_first_unsigned, zeta_int};
use umbra_core::UmbraKind;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

/// Keeps x at least `gap` away from the poles 0, −1, −2, … .
fn off_poles(x: f64, gap: f64) -> bool {
    x > 0.0 || (x - x.round()).abs() > gap
}

proptest! {
    #[test]
    fn digamma_recurrence(x in -20.0f64..20.0) {
        prop_assume!(off_poles(x, 1e-3) && off_poles(x + 1.0, 1e-3));
        let lhs = digamma(x + 1.0).unwrap();
        let rhs = digamma(x).unwrap() + 1.0 / x;
        prop_assert!(close(lhs, rhs, 1e-11), "{lhs} vs {rhs}");
    }

    #[test]
    fn digamma_duplication(x in 0.01f64..30.0) {
        let lhs = digamma(2.0 * x).unwrap();
        let rhs = 0.5 * digamma(x).unwrap() + 0.5 * digamma(x + 0.5).unwrap() + LN_2;
        prop_assert!(close(lhs, rhs, 1e-12), "{lhs} vs {rhs}");
    }

    #[test]
    fn polygamma_recurrence(k in 1u32..=8, x in 0.05f64..25.0) {
        // ψ⁽ᵏ⁾(x + 1) = ψ⁽ᵏ⁾(x) + (−1)ᵏ k!/x^{k+1}
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        // near 0 both right-hand terms are huge and cancel, so measure against them
        let lhs = polygamma(k, x + 1.0).unwrap();
        let base = polygamma(k, x).unwrap();
        let step = sign * factorial(k) / x.powi(k as i32 + 1);
        let scale = lhs.abs().max(base.abs()).max(step.abs()).max(1.0);
        prop_assert!((lhs - (base + step)).abs() <= 1e-10 * scale, "k={k} x={x}: {lhs} vs {}", base + step);
    }

    #[test]
    fn ln_gamma_step(x in 0.01f64..100.0) {
        let d = ln_gamma(x + 1.0).unwrap() - ln_gamma(x).unwrap();
        prop_assert!(close(d, x.ln(), 1e-12));
    }

    #[test]
    fn rising_factorial_is_stirling_polynomial(x in -5.0f64..5.0, n in 0u32..=12) {
        let poly: f64 = (0..=n as usize)
            .map(|k| stirling_first_unsigned(n as usize, k).unwrap() as f64 * x.powi(k as i32))
            .sum();
        let scale: f64 = (0..=n as usize)
            .map(|k| stirling_first_unsigned(n as usize, k).unwrap() as f64 * x.abs().powi(k as i32))
            .sum();
        prop_assert!((rising_factorial(x, n) - poly).abs() <= 1e-13 * scale.max(1.0));
    }

    #[test]
    fn polynomial_difference_equations(x in -3.0f64..3.0, n in 1usize..=14) {
        // Bₙ(x+1) − Bₙ(x) = n x^{n−1},  Eₙ(x+1) + Eₙ(x) = 2xⁿ
        let db = bernoulli_poly(n, x + 1.0).unwrap() - bernoulli_poly(n, x).unwrap();
        prop_assert!(close(db, n as f64 * x.powi(n as i32 - 1), 1e-9), "B_{n}({x})");
        let se = euler_poly(n, x + 1.0).unwrap() + euler_poly(n, x).unwrap();
        prop_assert!(close(se, 2.0 * x.powi(n as i32), 1e-9), "E_{n}({x})");
    }

    #[test]
    fn polynomial_reflection(x in -3.0f64..4.0, n in 0usize..=14) {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let b = bernoulli_poly(n, x).unwrap();
        prop_assert!(close(bernoulli_poly(n, 1.0 - x).unwrap(), sign * b, 1e-9));
        let e = euler_poly(n, x).unwrap();
        prop_assert!(close(euler_poly(n, 1.0 - x).unwrap(), sign * e, 1e-9));
    }

    #[test]
    fn bernoulli_generating_function(x in -1.0f64..2.0, z in -1.5f64..1.5) {
        prop_assume!(z.abs() > 1e-3);
        // Σ Bₙ(x) zⁿ/n! = z e^{zx}/(e^z − 1)
        let mut term = 1.0;
        let mut sum = 0.0;
        for n in 0..=30usize {
            if n > 0 {
                term *= z / n as f64;
            }
            sum += bernoulli_poly(n, x).unwrap() * term;
        }
        let exact = z * (z * x).exp() / z.exp_m1();
        prop_assert!(close(sum, exact, 1e-10), "{sum} vs {exact}");
    }

    #[test]
    fn log_moments_are_reflection_symmetric(x in -6.0f64..7.0) {
        prop_assert!(close(log_moment_bernoulli(x).value, log_moment_bernoulli(1.0 - x).value, 1e-13));
        prop_assert!(close(log_moment_euler(x).value, log_moment_euler(1.0 - x).value, 1e-13));
    }

    #[test]
    fn inverse_moments_are_reflection_odd_or_even(x in -6.0f64..7.0, k in 1u32..=6) {
        prop_assume!((x - 0.5).abs() > 1e-3);
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let b = inv_moment_bernoulli(k, x).unwrap().value;
        prop_assert!(close(inv_moment_bernoulli(k, 1.0 - x).unwrap().value, sign * b, 1e-11));
        let e = inv_moment_euler(k, x).unwrap().value;
        prop_assert!(close(inv_moment_euler(k, 1.0 - x).unwrap().value, sign * e, 1e-11));
    }

    #[test]
    fn derivative_ladder(x in -4.0f64..5.0, k in 1u32..=5) {
        // d/dx h(𝔘(x)) = h'(𝔘(x)): (log)' = z^{−1} and (z^{−k})' = −k z^{−k−1}
        prop_assume!((x - 0.5).abs() > 0.05);
        let h = 1e-5;
        let cd = |f: &dyn Fn(f64) -> f64| (f(x + h) - f(x - h)) / (2.0 * h);
        let dlog_b = cd(&|y| log_moment_bernoulli(y).value);
        prop_assert!(close(dlog_b, inv_moment_bernoulli(1, x).unwrap().value, 1e-6));
        let dlog_e = cd(&|y| log_moment_euler(y).value);
        prop_assert!(close(dlog_e, inv_moment_euler(1, x).unwrap().value, 1e-6));
        let dinv_b = cd(&|y| inv_moment_bernoulli(k, y).unwrap().value);
        let expect_b = -(k as f64) * inv_moment_bernoulli(k + 1, x).unwrap().value;
        prop_assert!(close(dinv_b, expect_b, 1e-6), "B k={k}: {dinv_b} vs {expect_b}");
        let dinv_e = cd(&|y| inv_moment_euler(k, y).unwrap().value);
        let expect_e = -(k as f64) * inv_moment_euler(k + 1, x).unwrap().value;
        prop_assert!(close(dinv_e, expect_e, 1e-6), "E k={k}: {dinv_e} vs {expect_e}");
    }

    #[test]
    fn pochhammer_three_routes(x in -3.0f64..4.0, n in 0u32..=10) {
        for kind in UmbraKind::ALL {
            let closed = match kind {
                UmbraKind::Bernoulli => pochhammer_bernoulli(n, x).unwrap().value,
                UmbraKind::Euler => pochhammer_euler(n, x).value,
            };
            let series = genfn_series(kind, x, n as usize).unwrap().pochhammer(n as usize).unwrap();
            let stirling = pochhammer_stirling_oracle(kind, n as usize, x).unwrap();
            prop_assert!(close(closed, series, 1e-8), "{kind} n={n} x={x}: {closed} vs {series}");
            prop_assert!(close(closed, stirling, 1e-8), "{kind} n={n} x={x}: {closed} vs {stirling}");
            // the two oracles share the Stirling sum's cancellation, so compare on Σ c(n,k)|Pₖ(x)|
            let cond: f64 = (0..=n as usize)
                .map(|k| {
                    let p = match kind {
                        UmbraKind::Bernoulli => bernoulli_poly(k, x).unwrap(),
                        UmbraKind::Euler => euler_poly(k, x).unwrap(),
                    };
                    stirling_first_unsigned(n as usize, k).unwrap() as f64 * p.abs()
                })
                .sum();
            prop_assert!((series - stirling).abs() <= 1e-13 * cond.max(1.0), "{kind} n={n} x={x}: {series} vs {stirling}");
        }
    }
}

#[test]
fn polygamma_at_one_is_zeta() {
    // ψ⁽ᵏ⁾(1) = (−1)^{k+1} k! ζ(k+1)
    for k in 1..=10u32 {
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        let expect = sign * factorial(k) * zeta_int(k + 1).unwrap();
        assert!(close(polygamma(k, 1.0).unwrap(), expect, 1e-12), "k={k}");
    }
}

#[test]
fn odd_euler_numbers_vanish() {
    for n in (1..=29).step_by(2) {
        assert!(euler_number(n).unwrap().is_zero(), "E_{n}");
    }
}

