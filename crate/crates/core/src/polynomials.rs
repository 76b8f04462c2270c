//! Exact Bernoulli and Euler numbers and polynomials.
//!
//! These are the integer-power moments of the umbrae, 𝔅(x)ⁿ = Bₙ(x) and
//! 𝔈(x)ⁿ = Eₙ(x). Coefficients are held as exact rationals and only
//! converted to `f64` when a polynomial is evaluated.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{out_of_range, Result};

/// Highest degree supported by the exact tables.
pub const POLY_N_MAX: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SequenceKind {
    BernoulliNumber,
    EulerNumber,
    BernoulliPoly,
    EulerPoly,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SequenceValues {
    Numbers(Vec<BigRational>),
    /// `coefficients[n][j]` is the coefficient of xʲ in the degree-n polynomial.
    Polynomials(Vec<Vec<BigRational>>),
}

/// A finite table of numbers or polynomial coefficients up to degree `n_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolySequence {
    pub kind: SequenceKind,
    pub n_max: usize,
    pub values: SequenceValues,
}

impl PolySequence {
    pub fn number(&self, n: usize) -> Option<&BigRational> {
        match &self.values {
            SequenceValues::Numbers(v) => v.get(n),
            SequenceValues::Polynomials(_) => None,
        }
    }

    pub fn coefficients(&self, n: usize) -> Option<&[BigRational]> {
        match &self.values {
            SequenceValues::Polynomials(v) => v.get(n).map(Vec::as_slice),
            SequenceValues::Numbers(_) => None,
        }
    }
}

fn check_degree(n: usize) -> Result<()> {
    if n > POLY_N_MAX {
        Err(out_of_range("degree", n, "0..=30"))
    } else {
        Ok(())
    }
}

fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 1..=n {
        let next = &row[k - 1] * BigInt::from(n - k + 1) / BigInt::from(k);
        row.push(next);
    }
    row
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn exact_bernoulli_numbers() -> &'static [BigRational] {
    static TABLE: OnceLock<Vec<BigRational>> = OnceLock::new();
    TABLE.get_or_init(|| {
        // Σ_{j=0}^{n} C(n+1, j) Bⱼ = 0 for n ≥ 1
        let mut b: Vec<BigRational> = vec![BigRational::one()];
        for n in 1..=POLY_N_MAX {
            let binom = binomial_row(n + 1);
            let mut acc = BigRational::zero();
            for (j, bj) in b.iter().enumerate() {
                acc += BigRational::from_integer(binom[j].clone()) * bj;
            }
            b.push(-acc / BigRational::from_integer(binom[n].clone()));
        }
        b
    })
}

fn exact_euler_numbers() -> &'static [BigRational] {
    static TABLE: OnceLock<Vec<BigRational>> = OnceLock::new();
    TABLE.get_or_init(|| {
        // sech · cosh = 1: Σ_{k even} C(n, k) E_{n−k} = 0 for n ≥ 1
        let mut e: Vec<BigRational> = vec![BigRational::one()];
        for n in 1..=POLY_N_MAX {
            if n % 2 == 1 {
                e.push(BigRational::zero());
                continue;
            }
            let binom = binomial_row(n);
            let mut acc = BigRational::zero();
            for k in (2..=n).step_by(2) {
                acc += BigRational::from_integer(binom[k].clone()) * &e[n - k];
            }
            e.push(-acc);
        }
        e
    })
}

/// Coefficients of Eₙ(x) in powers of (x − ½): C(n, k) Eₖ / 2ᵏ at (x−½)^{n−k}.
fn euler_shifted_coefficients() -> &'static [Vec<BigRational>] {
    static TABLE: OnceLock<Vec<Vec<BigRational>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let e = exact_euler_numbers();
        (0..=POLY_N_MAX)
            .map(|n| {
                let binom = binomial_row(n);
                let mut coeffs = vec![BigRational::zero(); n + 1];
                for k in 0..=n {
                    let scale = BigRational::new(BigInt::one(), BigInt::one() << k);
                    coeffs[n - k] = BigRational::from_integer(binom[k].clone()) * &e[k] * scale;
                }
                coeffs
            })
            .collect()
    })
}

fn bernoulli_coefficients() -> &'static [Vec<BigRational>] {
    static TABLE: OnceLock<Vec<Vec<BigRational>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let b = exact_bernoulli_numbers();
        (0..=POLY_N_MAX)
            .map(|n| {
                let binom = binomial_row(n);
                let mut coeffs = vec![BigRational::zero(); n + 1];
                for k in 0..=n {
                    coeffs[n - k] = BigRational::from_integer(binom[k].clone()) * &b[k];
                }
                coeffs
            })
            .collect()
    })
}

fn to_f64_table(table: &[Vec<BigRational>]) -> Vec<Vec<f64>> {
    table
        .iter()
        .map(|row| row.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect())
        .collect()
}

fn bernoulli_coefficients_f64() -> &'static [Vec<f64>] {
    static TABLE: OnceLock<Vec<Vec<f64>>> = OnceLock::new();
    TABLE.get_or_init(|| to_f64_table(bernoulli_coefficients()))
}

fn euler_shifted_coefficients_f64() -> &'static [Vec<f64>] {
    static TABLE: OnceLock<Vec<Vec<f64>>> = OnceLock::new();
    TABLE.get_or_init(|| to_f64_table(euler_shifted_coefficients()))
}

fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// Exact B₀..B_{n_max}.
pub fn bernoulli_numbers(n_max: usize) -> Result<PolySequence> {
    check_degree(n_max)?;
    Ok(PolySequence {
        kind: SequenceKind::BernoulliNumber,
        n_max,
        values: SequenceValues::Numbers(exact_bernoulli_numbers()[..=n_max].to_vec()),
    })
}

/// Exact E₀..E_{n_max} (Taylor coefficients of sech z times n!).
pub fn euler_numbers(n_max: usize) -> Result<PolySequence> {
    check_degree(n_max)?;
    Ok(PolySequence {
        kind: SequenceKind::EulerNumber,
        n_max,
        values: SequenceValues::Numbers(exact_euler_numbers()[..=n_max].to_vec()),
    })
}

/// Exact coefficients (in powers of x) of B₀(x)..B_{n_max}(x).
pub fn bernoulli_polynomials(n_max: usize) -> Result<PolySequence> {
    check_degree(n_max)?;
    Ok(PolySequence {
        kind: SequenceKind::BernoulliPoly,
        n_max,
        values: SequenceValues::Polynomials(bernoulli_coefficients()[..=n_max].to_vec()),
    })
}

/// Exact coefficients (in powers of x) of E₀(x)..E_{n_max}(x).
pub fn euler_polynomials(n_max: usize) -> Result<PolySequence> {
    check_degree(n_max)?;
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let polys = euler_shifted_coefficients()[..=n_max]
        .iter()
        .map(|shifted| expand_shift(shifted, &half))
        .collect();
    Ok(PolySequence {
        kind: SequenceKind::EulerPoly,
        n_max,
        values: SequenceValues::Polynomials(polys),
    })
}

/// Re-expands Σ aⱼ (x − s)ʲ in powers of x.
fn expand_shift(shifted: &[BigRational], s: &BigRational) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); shifted.len()];
    for (j, a) in shifted.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let binom = binomial_row(j);
        let mut neg_pow = BigRational::one();
        for i in (0..=j).rev() {
            // term C(j, i) xⁱ (−s)^{j−i}
            out[i] += a * BigRational::from_integer(binom[i].clone()) * &neg_pow;
            neg_pow = &neg_pow * -s;
        }
    }
    out
}

/// Bₙ(x) = Σₖ C(n,k) Bₖ x^{n−k}.
pub fn bernoulli_poly(n: usize, x: f64) -> Result<f64> {
    check_degree(n)?;
    Ok(horner(&bernoulli_coefficients_f64()[n], x))
}

/// Eₙ(x), evaluated by Horner in the shifted variable x − ½.
pub fn euler_poly(n: usize, x: f64) -> Result<f64> {
    check_degree(n)?;
    Ok(horner(&euler_shifted_coefficients_f64()[n], x - 0.5))
}

/// Exact Bₙ.
pub fn bernoulli_number(n: usize) -> Result<BigRational> {
    check_degree(n)?;
    Ok(exact_bernoulli_numbers()[n].clone())
}

/// Exact Eₙ.
pub fn euler_number(n: usize) -> Result<BigRational> {
    check_degree(n)?;
    Ok(exact_euler_numbers()[n].clone())
}

/// Exact Bₙ(x) at a rational point.
pub fn bernoulli_poly_exact(n: usize, x: &BigRational) -> Result<BigRational> {
    check_degree(n)?;
    Ok(horner_exact(&bernoulli_coefficients()[n], x))
}

/// Exact Eₙ(x) at a rational point.
pub fn euler_poly_exact(n: usize, x: &BigRational) -> Result<BigRational> {
    check_degree(n)?;
    let shifted = x - BigRational::new(BigInt::one(), BigInt::from(2));
    Ok(horner_exact(&euler_shifted_coefficients()[n], &shifted))
}

fn horner_exact(coeffs: &[BigRational], x: &BigRational) -> BigRational {
    coeffs
        .iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + c)
}

/// Convenience for tests and reports: n / d as an exact rational.
pub fn ratio(n: i64, d: i64) -> BigRational {
    rat(n) / rat(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_numbers_match_listed_values() {
        let b = bernoulli_numbers(30).unwrap();
        assert_eq!(b.number(0).unwrap(), &ratio(1, 1));
        assert_eq!(b.number(1).unwrap(), &ratio(-1, 2));
        assert_eq!(b.number(2).unwrap(), &ratio(1, 6));
        assert_eq!(b.number(3).unwrap(), &ratio(0, 1));
        assert_eq!(b.number(4).unwrap(), &ratio(-1, 30));
        assert_eq!(b.number(12).unwrap(), &ratio(-691, 2730));
        assert_eq!(b.number(30).unwrap(), &ratio(8_615_841_276_005, 14_322));
        for n in (3..=30).step_by(2) {
            assert!(b.number(n).unwrap().is_zero(), "B_{n}");
        }
        assert!(bernoulli_numbers(31).is_err());
    }

    #[test]
    fn euler_numbers_match_sech_series() {
        let e = euler_numbers(30).unwrap();
        let expect = [1, 0, -1, 0, 5, 0, -61, 0, 1385, 0, -50521];
        for (n, v) in expect.iter().enumerate() {
            assert_eq!(e.number(n).unwrap(), &ratio(*v, 1), "E_{n}");
        }
        for n in (1..=30).step_by(2) {
            assert!(e.number(n).unwrap().is_zero());
        }
        assert!(euler_numbers(31).is_err());
    }

    #[test]
    fn sech_series_division_oracle() {
        // 1 / cosh z by power-series division; n! aₙ = Eₙ.
        let n = 16;
        let cosh: Vec<BigRational> = (0..=n)
            .map(|k| {
                if k % 2 == 0 {
                    BigRational::new(BigInt::one(), (1..=k as u64).product::<u64>().into())
                } else {
                    BigRational::zero()
                }
            })
            .collect();
        let mut sech = vec![BigRational::zero(); n + 1];
        for k in 0..=n {
            let mut acc = if k == 0 {
                BigRational::one()
            } else {
                BigRational::zero()
            };
            for j in 1..=k {
                acc -= &cosh[j] * &sech[k - j];
            }
            sech[k] = acc;
        }
        for (k, s) in sech.iter().enumerate() {
            let fact: BigInt = (1..=k as u64).product::<u64>().into();
            let scaled = s * BigRational::from_integer(fact);
            assert_eq!(scaled, euler_number(k).unwrap());
        }
    }

    #[test]
    fn polynomial_values() {
        assert!((bernoulli_poly(2, 0.0).unwrap() - 1.0 / 6.0).abs() < 1e-15);
        assert_eq!(bernoulli_poly(1, 0.5).unwrap(), 0.0);
        assert!((bernoulli_poly(2, 2.0).unwrap() - 13.0 / 6.0).abs() < 1e-14);
        assert_eq!(
            bernoulli_poly_exact(2, &ratio(2, 1)).unwrap(),
            ratio(13, 6)
        );
        assert_eq!(euler_poly(1, 1.0).unwrap(), 0.5);
        assert_eq!(euler_poly_exact(3, &ratio(2, 1)).unwrap(), ratio(9, 4));
    }

    #[test]
    fn polynomial_structure() {
        let bp = bernoulli_polynomials(30).unwrap();
        let ep = euler_polynomials(30).unwrap();
        for n in 0..=30 {
            let c = bp.coefficients(n).unwrap();
            assert_eq!(c[n], BigRational::one());
            assert_eq!(c[0], bernoulli_number(n).unwrap());
            let e = ep.coefficients(n).unwrap();
            assert_eq!(e[n], BigRational::one());
            // 2ⁿ Eₙ(½) = Eₙ
            let half = ratio(1, 2);
            let at_half = horner_exact(e, &half) * BigRational::from_integer(BigInt::one() << n);
            assert_eq!(at_half, euler_number(n).unwrap());
        }
        // E₂(x) = x² − x
        assert_eq!(
            ep.coefficients(2).unwrap(),
            &[ratio(0, 1), ratio(-1, 1), ratio(1, 1)]
        );
    }
}
