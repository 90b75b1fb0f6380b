//! Smooth symmetric kernels for the integral operators.

use crate::special::{airy_ai_both, bessel_j, bessel_j_derivative, sinc_pi, sinc_pi_c64};
use crate::fredholm::quad::GaussLegendre;
use num_complex::Complex64;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FredholmError {
    #[error("scale parameter {0} lies outside the kernel's analyticity region")]
    InvalidRegion(Complex64),
    #[error("discretized operator is near-singular (condition estimate {0:.2e})")]
    NearSingular(f64),
    #[error("grid too coarse: {0} points (need at least {1})")]
    GridTooCoarse(usize, usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

type ComplexKernelFn = Arc<dyn Fn(Complex64, Complex64) -> Complex64 + Send + Sync>;

/// Symmetric kernel k(x, t) = k(t, x), analytic on its region.
#[derive(Clone)]
pub enum SmoothKernel {
    /// gamma sin(pi(x-t)) / (pi(x-t)); entire in both arguments.
    Sine { gamma: f64 },
    /// gamma [Ai(x)Ai'(t) - Ai(t)Ai'(x)]/(x - t); evaluated on the real axis.
    Airy { gamma: f64 },
    /// gamma [phi(x)psi(t) - phi(t)psi(x)]/(x - t) with phi(x) = J_alpha(sqrt x),
    /// psi(x) = x phi'(x); real axis x, t >= 0 (alpha > -1).
    Bessel { gamma: f64, alpha: f64 },
    /// User-supplied analytic kernel.
    Custom(ComplexKernelFn),
}

impl std::fmt::Debug for SmoothKernel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SmoothKernel::Sine { gamma } => write!(f, "Sine(gamma={gamma})"),
            SmoothKernel::Airy { gamma } => write!(f, "Airy(gamma={gamma})"),
            SmoothKernel::Bessel { gamma, alpha } => {
                write!(f, "Bessel(gamma={gamma}, alpha={alpha})")
            }
            SmoothKernel::Custom(_) => write!(f, "Custom(..)"),
        }
    }
}

/// phi(x) = J_alpha(sqrt x).
pub fn bessel_phi(alpha: f64, x: f64) -> f64 {
    bessel_j(alpha, x.max(0.0).sqrt())
}

/// psi(x) = x phi'(x) = sqrt(x) J_alpha'(sqrt x) / 2.
pub fn bessel_psi(alpha: f64, x: f64) -> f64 {
    let s = x.max(0.0).sqrt();
    0.5 * s * bessel_j_derivative(alpha, s)
}

impl SmoothKernel {
    pub fn gamma(&self) -> f64 {
        match self {
            SmoothKernel::Sine { gamma }
            | SmoothKernel::Airy { gamma }
            | SmoothKernel::Bessel { gamma, .. } => *gamma,
            SmoothKernel::Custom(_) => 1.0,
        }
    }

    /// Whether complex-scaled evaluation is available. The special-function
    /// implementations behind the Airy and Bessel kernels are real-domain, so
    /// those kernels discretize on the real axis only.
    pub fn supports_complex_scale(&self) -> bool {
        matches!(self, SmoothKernel::Sine { .. } | SmoothKernel::Custom(_))
    }

    /// Real-axis evaluation with removable singularities handled on and near
    /// the diagonal.
    pub fn eval_real(&self, x: f64, t: f64) -> f64 {
        match self {
            SmoothKernel::Sine { gamma } => gamma * sinc_pi(x - t),
            SmoothKernel::Airy { gamma } => {
                let d = x - t;
                if d.abs() < 1e-6 * (1.0 + x.abs().max(t.abs())) {
                    // limit: Ai'(m)^2 - m Ai(m)^2 at the midpoint
                    let m = 0.5 * (x + t);
                    let (ai, aip) = airy_ai_both(m);
                    gamma * (aip * aip - m * ai * ai)
                } else {
                    let (ax, apx) = airy_ai_both(x);
                    let (at, apt) = airy_ai_both(t);
                    gamma * (ax * apt - at * apx) / d
                }
            }
            SmoothKernel::Bessel { gamma, alpha } => {
                let d = x - t;
                if d.abs() < 1e-3 * (1.0 + x.abs().max(t.abs())) {
                    // Integral form 1/4 int_0^1 phi(xs) phi(ts) ds avoids the
                    // 0/0 of the difference quotient near the diagonal.
                    let rule = GaussLegendre::new(32);
                    gamma
                        * 0.25
                        * rule.integrate(0.0, 1.0, |s| {
                            bessel_phi(*alpha, x * s) * bessel_phi(*alpha, t * s)
                        })
                } else {
                    let (px, qx) = (bessel_phi(*alpha, x), bessel_psi(*alpha, x));
                    let (pt, qt) = (bessel_phi(*alpha, t), bessel_psi(*alpha, t));
                    gamma * (px * qt - pt * qx) / d
                }
            }
            SmoothKernel::Custom(f) => {
                f(Complex64::new(x, 0.0), Complex64::new(t, 0.0)).re
            }
        }
    }

    /// Complex evaluation for kernels that continue off the real axis.
    pub fn eval_complex(&self, z: Complex64, w: Complex64) -> Result<Complex64, FredholmError> {
        match self {
            SmoothKernel::Sine { gamma } => Ok(sinc_pi_c64(z - w) * *gamma),
            SmoothKernel::Custom(f) => Ok(f(z, w)),
            _ => Err(FredholmError::InvalidRegion(z)),
        }
    }
}
