//! Real special functions used by the closed forms: Γ, log Γ, digamma,
//! polygamma, ζ at integers, rising factorials and Stirling numbers of the
//! first kind.
//!
//! Accuracy targets (double precision):
//!
//! | function     | method                                      | target            |
//! |--------------|---------------------------------------------|-------------------|
//! | `ln_gamma`   | upward shift to x ≥ 10, Stirling series     | 1e-13 absolute    |
//! | `gamma`      | exp(ln Γ), reflection below ½                | 1e-12 relative    |
//! | `digamma`    | upward recurrence to x ≥ 10, asymptotic     | 1e-13 relative    |
//! | `polygamma`  | upward recurrence to x ≥ 30, asymptotic     | 1e-13 relative    |
//! | `zeta_int`   | direct sum to N = 20, Euler–Maclaurin tail  | 1e-15 absolute    |

use std::f64::consts::{LN_2, PI};
use std::sync::OnceLock;

use crate::error::{out_of_range, Result, UmbraError};

/// Euler–Mascheroni constant γ.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Largest ζ(m) held in the constant table.
pub const ZETA_MAX: u32 = 16;

/// Highest polygamma order supported by [`polygamma`].
pub const POLYGAMMA_MAX_ORDER: u32 = 10;

/// Default size of the shared Stirling table.
pub const STIRLING_N_MAX: usize = 20;

/// B₂, B₄, …, B₂₀.
const BERNOULLI_EVEN: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;
const DIGAMMA_SHIFT: f64 = 10.0;
const POLYGAMMA_SHIFT: f64 = 30.0;
const ZETA_DIRECT_TERMS: u32 = 20;

/// Constants shared by the closed forms, built once and immutable afterwards.
#[derive(Debug, Clone)]
pub struct SpecialConstantTable {
    pub euler_gamma: f64,
    /// `zeta[m - 2]` holds ζ(m) for m in 2..=ZETA_MAX.
    zeta: Vec<f64>,
    pub log2: f64,
    pub pi: f64,
}

impl SpecialConstantTable {
    fn build() -> Self {
        let zeta = (2..=ZETA_MAX).map(zeta_euler_maclaurin).collect();
        SpecialConstantTable {
            euler_gamma: EULER_GAMMA,
            zeta,
            log2: LN_2,
            pi: PI,
        }
    }

    pub fn zeta(&self, m: u32) -> Option<f64> {
        if (2..=ZETA_MAX).contains(&m) {
            Some(self.zeta[(m - 2) as usize])
        } else {
            None
        }
    }
}

/// The process-wide constant table.
pub fn constants() -> &'static SpecialConstantTable {
    static TABLE: OnceLock<SpecialConstantTable> = OnceLock::new();
    TABLE.get_or_init(SpecialConstantTable::build)
}

fn is_pole(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// sin(πx) with exact argument reduction.
pub fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (0.5 * x).round();
    (PI * r).sin()
}

/// cot(πx) with exact argument reduction.
fn cot_pi(x: f64) -> f64 {
    let r = x - x.round();
    let a = PI * r;
    a.cos() / a.sin()
}

pub fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, j| acc * j as f64)
}

fn ln_gamma_stirling(x: f64) -> f64 {
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut pow = inv;
    let mut corr = 0.0;
    for (i, b) in BERNOULLI_EVEN.iter().take(8).enumerate() {
        let k = (i + 1) as f64;
        corr += b / (2.0 * k * (2.0 * k - 1.0)) * pow;
        pow *= inv2;
    }
    (x - 0.5) * x.ln() - x + LN_SQRT_2PI + corr
}

fn ln_gamma_positive(x: f64) -> f64 {
    if x >= DIGAMMA_SHIFT {
        return ln_gamma_stirling(x);
    }
    let mut shifted = x;
    let mut prod = 1.0;
    while shifted < DIGAMMA_SHIFT {
        prod *= shifted;
        shifted += 1.0;
    }
    ln_gamma_stirling(shifted) - prod.ln()
}

/// ln |Γ(x)|.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if is_pole(x) {
        return Err(UmbraError::PoleArgument { x });
    }
    if x > 0.0 {
        Ok(ln_gamma_positive(x))
    } else {
        Ok(PI.ln() - sin_pi(x).abs().ln() - ln_gamma_positive(1.0 - x))
    }
}

/// Γ(x), using the reflection formula for x < ½.
pub fn gamma(x: f64) -> Result<f64> {
    if is_pole(x) {
        return Err(UmbraError::PoleArgument { x });
    }
    if x == x.floor() && x <= 171.0 {
        return Ok(factorial(x as u32 - 1));
    }
    if x < 0.5 {
        let g = gamma(1.0 - x)?;
        return Ok(PI / (sin_pi(x) * g));
    }
    Ok(ln_gamma_positive(x).exp())
}

fn digamma_asymptotic(x: f64) -> f64 {
    let inv2 = 1.0 / (x * x);
    let mut pow = inv2;
    let mut series = 0.0;
    for (i, b) in BERNOULLI_EVEN.iter().take(8).enumerate() {
        series += b / (2.0 * (i + 1) as f64) * pow;
        pow *= inv2;
    }
    x.ln() - 0.5 / x - series
}

/// Digamma ψ(x) = Γ'(x)/Γ(x).
pub fn digamma(x: f64) -> Result<f64> {
    if is_pole(x) {
        return Err(UmbraError::PoleArgument { x });
    }
    if x < 0.0 {
        // ψ(x) = ψ(1 − x) − π cot(πx)
        return Ok(digamma(1.0 - x)? - PI * cot_pi(x));
    }
    let steps = if x < DIGAMMA_SHIFT {
        (DIGAMMA_SHIFT - x).ceil() as u32
    } else {
        0
    };
    let mut acc = digamma_asymptotic(x + steps as f64);
    for j in (0..steps).rev() {
        acc -= 1.0 / (x + j as f64);
    }
    Ok(acc)
}

fn polygamma_asymptotic(k: u32, x: f64) -> f64 {
    let kf = k as f64;
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let lead = factorial(k - 1) * inv.powi(k as i32);
    let second = factorial(k) * 0.5 * inv.powi(k as i32 + 1);
    // (2j + k − 1)! / (2j)! x^{2j+k}, built incrementally from j = 0.
    let mut ratio = factorial(k - 1); // (k − 1)! / 0!
    let mut pow = inv.powi(k as i32);
    let mut series = 0.0;
    for (i, b) in BERNOULLI_EVEN.iter().enumerate() {
        let j = (i + 1) as f64;
        ratio *= (2.0 * j + kf - 2.0) * (2.0 * j + kf - 1.0) / ((2.0 * j - 1.0) * (2.0 * j));
        pow *= inv2;
        series += b * ratio * pow;
    }
    let magnitude = series + second + lead;
    if k % 2 == 1 {
        magnitude
    } else {
        -magnitude
    }
}

/// Polygamma ψ⁽ᵏ⁾(x) for 1 ≤ k ≤ 10.
///
/// Negative non-integer arguments are handled by the same upward
/// recurrence, so the cost grows linearly with |x| there.
pub fn polygamma(k: u32, x: f64) -> Result<f64> {
    if k == 0 {
        return digamma(x);
    }
    if k > POLYGAMMA_MAX_ORDER {
        return Err(UmbraError::UnsupportedOrder {
            k,
            max: POLYGAMMA_MAX_ORDER,
        });
    }
    if is_pole(x) {
        return Err(UmbraError::PoleArgument { x });
    }
    let steps = if x < POLYGAMMA_SHIFT {
        (POLYGAMMA_SHIFT - x).ceil() as u64
    } else {
        0
    };
    // ψ⁽ᵏ⁾(x) = ψ⁽ᵏ⁾(x + N) + (−1)^{k+1} k! Σ_{j<N} (x + j)^{−(k+1)}
    let mut tail = 0.0;
    for j in (0..steps).rev() {
        tail += (x + j as f64).powi(-(k as i32 + 1));
    }
    let signed_fact = if k % 2 == 1 {
        factorial(k)
    } else {
        -factorial(k)
    };
    Ok(polygamma_asymptotic(k, x + steps as f64) + signed_fact * tail)
}

fn zeta_euler_maclaurin(m: u32) -> f64 {
    let n = ZETA_DIRECT_TERMS as f64;
    let mf = m as f64;
    // Tail Σ_{j≥N} j^{-m} ≈ N^{1−m}/(m−1) + N^{−m}/2 + Σ B₂ᵢ/(2i)! (m)_{2i−1} N^{−m−2i+1}
    let mut tail = n.powf(1.0 - mf) / (mf - 1.0) + 0.5 * n.powf(-mf);
    let mut rising = mf; // (m)_{2i−1}
    let mut fact = 2.0; // (2i)!
    let mut pow = n.powf(-mf - 1.0);
    for (i, b) in BERNOULLI_EVEN.iter().take(6).enumerate() {
        let i = (i + 1) as f64;
        tail += b / fact * rising * pow;
        rising *= (mf + 2.0 * i - 1.0) * (mf + 2.0 * i);
        fact *= (2.0 * i + 1.0) * (2.0 * i + 2.0);
        pow /= n * n;
    }
    let mut acc = tail;
    for j in (1..ZETA_DIRECT_TERMS).rev() {
        acc += (j as f64).powi(-(m as i32));
    }
    acc
}

/// Riemann ζ(m) for integers 2 ≤ m ≤ 16, read from the constant table.
pub fn zeta_int(m: u32) -> Result<f64> {
    constants()
        .zeta(m)
        .ok_or_else(|| out_of_range("zeta order", m, "2..=16"))
}

/// Rising factorial (x)ₙ = x(x+1)…(x+n−1).
pub fn rising_factorial(x: f64, n: u32) -> f64 {
    (0..n).fold(1.0, |acc, j| acc * (x + j as f64))
}

/// Unsigned Stirling numbers of the first kind, c(n, k), in exact integers.
#[derive(Debug, Clone)]
pub struct StirlingTable {
    n_max: usize,
    rows: Vec<Vec<u128>>,
}

impl StirlingTable {
    /// Builds rows 0..=n_max with c(n+1, k) = c(n, k−1) + n·c(n, k).
    pub fn new(n_max: usize) -> Result<Self> {
        let mut rows: Vec<Vec<u128>> = vec![vec![1]];
        for n in 0..n_max {
            let prev = &rows[n];
            let mut next = vec![0u128; n + 2];
            for (k, slot) in next.iter_mut().enumerate() {
                let left = if k >= 1 { prev[k - 1] } else { 0 };
                let right = prev.get(k).copied().unwrap_or(0);
                *slot = right
                    .checked_mul(n as u128)
                    .and_then(|v| v.checked_add(left))
                    .ok_or(UmbraError::Overflow("Stirling table"))?;
            }
            rows.push(next);
        }
        Ok(StirlingTable { n_max, rows })
    }

    /// The process-wide table up to [`STIRLING_N_MAX`].
    pub fn shared() -> &'static StirlingTable {
        static TABLE: OnceLock<StirlingTable> = OnceLock::new();
        TABLE.get_or_init(|| StirlingTable::new(STIRLING_N_MAX).expect("n = 20 fits in u128"))
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn get(&self, n: usize, k: usize) -> Result<u128> {
        if n > self.n_max || k > n {
            return Err(out_of_range(
                "Stirling index",
                format!("({n}, {k})"),
                "0 <= k <= n <= n_max",
            ));
        }
        Ok(self.rows[n][k])
    }

    /// Row n as floating point coefficients of yᵏ in (y)ₙ.
    pub fn row_f64(&self, n: usize) -> Result<Vec<f64>> {
        if n > self.n_max {
            return Err(out_of_range("Stirling row", n, "0..=n_max"));
        }
        Ok(self.rows[n].iter().map(|&c| c as f64).collect())
    }
}

/// c(n, k) from the shared table.
pub fn stirling_first_unsigned(n: usize, k: usize) -> Result<u128> {
    StirlingTable::shared().get(n, k)
}
