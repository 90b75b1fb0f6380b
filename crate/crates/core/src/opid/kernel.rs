//! Even convolution kernels and their accelerant primitive M.

use crate::exact::num::{rat_i64, GaussianRational};
use crate::exact::Poly;
use crate::special::{sinc_pi, sine_integral};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OpidError {
    #[error("kernel polynomial must be even with real coefficients")]
    NotEvenReal,
    #[error("kernel degree {0} exceeds the symbolic bound 8")]
    DegreeTooLarge(usize),
    #[error("invalid kernel parameter: {0}")]
    InvalidParameter(String),
    #[error("discretized operator is singular or near-singular at this interval length")]
    SingularOperator,
}

/// Even, real convolution kernel k with k(x) = k(-x).
#[derive(Clone, Debug)]
pub enum KernelVariant {
    /// k(x) a real even polynomial.
    EvenPolynomial(Poly),
    /// k(x) = beta (e^{i lambda x} + e^{-i lambda x}) = 2 beta cos(lambda x).
    ExponentialPair { beta: f64, lambda: f64 },
    /// k(x) = gamma sin(pi x)/(pi x).
    Sinc { gamma: f64 },
}

#[derive(Clone, Debug)]
pub struct ConvolutionKernelSpec {
    pub variant: KernelVariant,
    /// Interval bound: operators act on (0, xi) for xi <= bound.
    pub bound: f64,
}

impl ConvolutionKernelSpec {
    pub fn new(variant: KernelVariant, bound: f64) -> Result<Self, OpidError> {
        match &variant {
            KernelVariant::EvenPolynomial(p) => {
                let even_real = p
                    .coeffs()
                    .iter()
                    .enumerate()
                    .all(|(k, c)| c.is_real() && (k % 2 == 0 || c.is_zero()));
                if !even_real {
                    return Err(OpidError::NotEvenReal);
                }
            }
            KernelVariant::ExponentialPair { beta, lambda } => {
                if *beta == 0.0 || *lambda <= 0.0 {
                    return Err(OpidError::InvalidParameter(
                        "need beta != 0 and lambda > 0".into(),
                    ));
                }
            }
            KernelVariant::Sinc { .. } => {}
        }
        Ok(Self { variant, bound })
    }

    pub fn even_polynomial(coeffs: &[(usize, i64, i64)], bound: f64) -> Result<Self, OpidError> {
        let deg = coeffs.iter().map(|&(k, _, _)| k).max().unwrap_or(0);
        let mut v = vec![GaussianRational::zero(); deg + 1];
        for &(k, num, den) in coeffs {
            v[k] = GaussianRational::frac(num, den);
        }
        Self::new(KernelVariant::EvenPolynomial(Poly::new(v)), bound)
    }

    /// Kernel value k(u).
    pub fn eval(&self, u: f64) -> f64 {
        match &self.variant {
            KernelVariant::EvenPolynomial(p) => {
                p.eval_c64(num_complex::Complex64::new(u, 0.0)).re
            }
            KernelVariant::ExponentialPair { beta, lambda } => {
                2.0 * beta * (lambda * u).cos()
            }
            KernelVariant::Sinc { gamma } => gamma * sinc_pi(u),
        }
    }
}

/// The accelerant primitive M(x) = int_0^x k(u) du + 1/2.
#[derive(Clone, Debug)]
pub enum MFunction {
    /// Exact polynomial (even polynomial kernels).
    Polynomial(Poly),
    /// (2 beta / lambda) sin(lambda x) + 1/2.
    TrigSine { beta: f64, lambda: f64 },
    /// (gamma / pi) Si(pi x) + 1/2.
    SincSi { gamma: f64 },
}

impl MFunction {
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            MFunction::Polynomial(p) => p.eval_c64(num_complex::Complex64::new(x, 0.0)).re,
            MFunction::TrigSine { beta, lambda } => {
                2.0 * beta / lambda * (lambda * x).sin() + 0.5
            }
            MFunction::SincSi { gamma } => {
                gamma / std::f64::consts::PI * sine_integral(std::f64::consts::PI * x) + 0.5
            }
        }
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        match self {
            MFunction::Polynomial(p) => Some(p),
            _ => None,
        }
    }
}

/// The operator-identity data built from a kernel: M drives Phi_1 g = M(x) g
/// and Phi_2 g = g.
#[derive(Clone, Debug)]
pub struct AccelerantSystem {
    pub m: MFunction,
}

/// M(x) = int_0^x k(u) du + 1/2, exact where the kernel is polynomial.
pub fn m_function(k: &ConvolutionKernelSpec) -> AccelerantSystem {
    let m = match &k.variant {
        KernelVariant::EvenPolynomial(p) => {
            let mut integral = p.integral();
            integral = &integral + &Poly::constant(GaussianRational::from_rat(rat_i64(1) / rat_i64(2)));
            MFunction::Polynomial(integral)
        }
        KernelVariant::ExponentialPair { beta, lambda } => {
            MFunction::TrigSine { beta: *beta, lambda: *lambda }
        }
        KernelVariant::Sinc { gamma } => MFunction::SincSi { gamma: *gamma },
    };
    AccelerantSystem { m }
}
