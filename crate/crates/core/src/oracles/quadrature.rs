//! Quadrature of E h(x − ½ + iL) = ∫ h(x − ½ + iu) f(u) du.
//!
//! The integral is folded onto [0, R] as ∫₀ᴿ (g(s) + g(−s)) ds, so odd
//! imaginary parts cancel pairwise. Composite 64-point Gauss–Legendre panels
//! are the default rule; tanh-sinh is available for the whole range or for
//! the first panel when the integrand has a log singularity at u = 0.
//!
//! Negative powers and logarithms have a pole or branch point at u = i(x−½),
//! which sits close to the real axis when x is near ½. For those the path is
//! moved to Im u = ∓c (c = `contour_shift`, default ¼), away from the
//! singularity and short of the density poles at ±i/2. The tails beyond ±R
//! are below 1e−20 for both densities, so the shifted and real-axis
//! integrals agree.

use std::f64::consts::{FRAC_PI_2, PI};
use std::ops::{Add, Mul};
use std::sync::OnceLock;

use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::closed_forms::Moment;
use crate::distributions::{density, density_complex, ComplexPoint, UmbraKind, UmbraSpec};
use crate::error::{out_of_range, Result, UmbraError};

const GL_ORDER: usize = 64;
const TANH_SINH_TMAX: f64 = 4.0;

/// The hyperbolic secant density decays like e^{−π|u|}, half the rate of the
/// logistic one, so its window is this many times wider.
pub const EULER_WINDOW_FACTOR: f64 = 2.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum QuadratureScheme {
    GaussLegendrePanels,
    TanhSinh,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    /// Half-width R of the logistic window [−R, R].
    pub truncation_radius: f64,
    /// Nodes over [−R, R] at the base level; the result is taken at twice this.
    pub node_count: usize,
    pub scheme: QuadratureScheme,
    /// Split at u = 0 and cluster nodes there; required for log singularities.
    pub singularity_split: bool,
    /// Distance c of the shifted path for negative powers and logs; 0 disables.
    pub contour_shift: f64,
    /// Allowed change between the base and doubled node counts, scaled by max(1, |I|).
    pub refinement_tol: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            truncation_radius: 8.0,
            node_count: 2000,
            scheme: QuadratureScheme::GaussLegendrePanels,
            singularity_split: false,
            contour_shift: 0.25,
            refinement_tol: 1e-10,
        }
    }
}

impl QuadratureSpec {
    pub fn with_split(mut self) -> Self {
        self.singularity_split = true;
        self
    }

    pub fn with_scheme(mut self, scheme: QuadratureScheme) -> Self {
        self.scheme = scheme;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.truncation_radius > 0.0) {
            return Err(out_of_range(
                "truncation_radius",
                self.truncation_radius,
                "> 0",
            ));
        }
        if self.node_count < 16 {
            return Err(out_of_range("node_count", self.node_count, ">= 16"));
        }
        if !(0.0..0.5).contains(&self.contour_shift) {
            return Err(out_of_range("contour_shift", self.contour_shift, "[0, 0.5)"));
        }
        Ok(())
    }

    /// Window for `kind`'s density.
    pub fn window(&self, kind: UmbraKind) -> f64 {
        match kind {
            UmbraKind::Bernoulli => self.truncation_radius,
            UmbraKind::Euler => EULER_WINDOW_FACTOR * self.truncation_radius,
        }
    }
}

fn gauss_legendre_64() -> &'static [(f64, f64)] {
    static NODES: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    NODES.get_or_init(|| gauss_legendre(GL_ORDER))
}

/// Nodes and weights of the n-point Gauss–Legendre rule on [−1, 1].
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = vec![(0.0, 0.0); n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for j in 2..=n {
                let jf = j as f64;
                let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 1 { x } else { p1 };
            let pn1 = if n == 1 { 1.0 } else { p0 };
            dp = nf * (x * pn - pn1) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out[i] = (-x, w);
        out[n - 1 - i] = (x, w);
    }
    out
}

fn gl_panel<T, F>(f: &F, lo: f64, hi: f64) -> T
where
    T: Zero + Add<Output = T> + Mul<f64, Output = T>,
    F: Fn(f64) -> T,
{
    let mid = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    gauss_legendre_64()
        .iter()
        .fold(T::zero(), |acc, &(x, w)| acc + f(mid + half * x) * (w * half))
}

/// Tanh-sinh rule with 2m + 1 nodes on [lo, hi]; never evaluates an endpoint.
pub(crate) fn tanh_sinh<T, F>(f: &F, lo: f64, hi: f64, m: usize) -> T
where
    T: Zero + Add<Output = T> + Mul<f64, Output = T>,
    F: Fn(f64) -> T,
{
    let half = 0.5 * (hi - lo);
    let h = TANH_SINH_TMAX / m as f64;
    let mut acc = T::zero();
    for j in -(m as i64)..=(m as i64) {
        let t = j as f64 * h;
        let s = FRAC_PI_2 * t.sinh();
        let cs = s.cosh();
        let w = h * half * FRAC_PI_2 * t.cosh() / (cs * cs);
        // distance from the nearer endpoint: half · (1 − tanh|s|)
        let dist = half * 2.0 / ((2.0 * s.abs()).exp() + 1.0);
        if dist == 0.0 || w == 0.0 {
            continue;
        }
        let x = if j >= 0 { hi - dist } else { lo + dist };
        if j == 0 {
            acc = acc + f(0.5 * (lo + hi)) * w;
        } else {
            acc = acc + f(x) * w;
        }
    }
    acc
}

/// ∫ over [lo, hi] with `nodes` function evaluations (approximately).
pub(crate) fn integrate<T, F>(
    f: &F,
    lo: f64,
    hi: f64,
    nodes: usize,
    scheme: QuadratureScheme,
    split_at_lo: bool,
) -> T
where
    T: Zero + Add<Output = T> + Mul<f64, Output = T>,
    F: Fn(f64) -> T,
{
    match scheme {
        QuadratureScheme::TanhSinh => tanh_sinh(f, lo, hi, (nodes / 2).max(8)),
        QuadratureScheme::GaussLegendrePanels => {
            let panels = nodes.div_ceil(GL_ORDER).max(1);
            let width = (hi - lo) / panels as f64;
            (0..panels).fold(T::zero(), |acc, p| {
                let a = lo + p as f64 * width;
                let b = if p + 1 == panels { hi } else { a + width };
                let part = if p == 0 && split_at_lo {
                    tanh_sinh(f, a, b, GL_ORDER)
                } else {
                    gl_panel(f, a, b)
                };
                acc + part
            })
        }
    }
}

pub(crate) fn log_cosh(y: f64) -> f64 {
    let a = y.abs();
    a + (-2.0 * a).exp().ln_1p() - std::f64::consts::LN_2
}

/// h(z) for each moment; `Log` and `LogSinHalfPi` use the principal branch.
pub(crate) fn integrand(moment: Moment, z: Complex64) -> Complex64 {
    match moment {
        Moment::Power(n) => z.powi(n as i32),
        Moment::InvPower(k) => z.powi(-(k as i32)),
        Moment::Log => z.ln(),
        Moment::LogSinHalfPi => (z * FRAC_PI_2).sin().ln(),
        Moment::LogCoshPiL => Complex64::new(log_cosh(PI * z.im), 0.0),
        Moment::Pochhammer(n) => (0..n).fold(Complex64::new(1.0, 0.0), |acc, j| {
            acc * (z + j as f64)
        }),
    }
}

struct Path {
    /// Real part used for h; x − ½ except for logs, where |x − ½| gives the same real part.
    re: f64,
    /// Imaginary offset σ of the path u = s + iσ.
    shift: f64,
    split: bool,
}

fn plan(spec: UmbraSpec, moment: Moment, q: &QuadratureSpec) -> Result<Path> {
    let a = spec.offset();
    let singular = |name: &str| UmbraError::SingularIntegrand {
        integrand: name.to_string(),
        x: spec.x,
    };
    let path = match moment {
        Moment::InvPower(_) => {
            if a == 0.0 {
                return Err(singular(&moment.to_string()));
            }
            Path {
                re: a,
                shift: -q.contour_shift * a.signum(),
                split: q.singularity_split,
            }
        }
        Moment::Log => {
            if a == 0.0 {
                if !q.singularity_split {
                    return Err(singular("log"));
                }
                Path {
                    re: 0.0,
                    shift: 0.0,
                    split: true,
                }
            } else {
                // Re log(a + iu) = ½ log(a² + u²) is even in a, and the
                // imaginary part integrates to zero for either sign.
                Path {
                    re: a.abs(),
                    shift: -q.contour_shift,
                    split: q.singularity_split,
                }
            }
        }
        Moment::LogSinHalfPi => {
            let zero_on_path = (0.5 * a).fract() == 0.0;
            if zero_on_path && !q.singularity_split {
                return Err(singular("logsin"));
            }
            Path {
                re: a,
                shift: 0.0,
                split: q.singularity_split,
            }
        }
        _ => Path {
            re: a,
            shift: 0.0,
            split: q.singularity_split,
        },
    };
    Ok(path)
}

fn integrate_path(
    kind: UmbraKind,
    moment: Moment,
    path: &Path,
    q: &QuadratureSpec,
    node_count: usize,
) -> Complex64 {
    let window = q.window(kind);
    let nodes = ((node_count / 2) as f64 * window / q.truncation_radius).ceil() as usize;
    let sigma = path.shift;
    let g = |s: f64| -> Complex64 {
        let z = Complex64::new(path.re - sigma, s);
        let weight = if sigma == 0.0 {
            Complex64::new(density(kind, s), 0.0)
        } else {
            density_complex(kind, Complex64::new(s, sigma))
        };
        integrand(moment, z) * weight
    };
    let folded = |s: f64| g(s) + g(-s);
    integrate(&folded, 0.0, window, nodes, q.scheme, path.split)
}

/// E h(x − ½ + iL) by quadrature, returned as a complex value.
///
/// The imaginary part is reported rather than dropped; for every moment in
/// [`Moment`] it should vanish.
pub fn expect_quadrature(spec: UmbraSpec, moment: Moment, q: &QuadratureSpec) -> Result<ComplexPoint> {
    q.validate()?;
    let path = plan(spec, moment, q)?;
    let coarse = integrate_path(spec.kind, moment, &path, q, q.node_count);
    let fine = integrate_path(spec.kind, moment, &path, q, 2 * q.node_count);
    let delta = (fine - coarse).norm();
    let allowed = q.refinement_tol * fine.norm().max(1.0);
    if !(delta <= allowed) {
        return Err(UmbraError::NonConvergence { delta, allowed });
    }
    Ok(fine.into())
}

/// E h(x − ½ + iL) for a real function of u, integrated on the real axis.
pub fn expect_real<F: Fn(f64) -> f64>(kind: UmbraKind, h: F, q: &QuadratureSpec) -> f64 {
    let window = q.window(kind);
    let nodes = ((q.node_count / 2) as f64 * window / q.truncation_radius).ceil() as usize;
    let folded = |s: f64| (h(s) * density(kind, s)) + (h(-s) * density(kind, -s));
    integrate(&folded, 0.0, window, nodes, q.scheme, q.singularity_split)
}
