//! The canonical-system Hamiltonian determined by h2.
//!
//! H(xi) = 1/2 [[Q, 1],[1, 1/Q]] with Q^{-1} = 2 h2^2, h1 = 1/(2 h2), and the
//! string coefficient r with r^{-2}(x) = 2 h2^2(2x). h1, Q, H and r are all
//! derived from h2 so the pairing h1 h2 = 1/2 and det H = 0 hold by
//! construction.

use super::kernel::OpidError;
use crate::exact::num::GaussianRational;
use crate::exact::ratfunc::RationalFunction;
use crate::spectral::rfunc::{CallableHandle, MeromorphicHandle, SpectralError};
use num_complex::Complex64;

/// Closed forms for h2.
#[derive(Clone, Debug)]
pub enum H2Form {
    /// Exact rational function (even polynomial kernels).
    Rational(RationalFunction),
    /// u/v with u = x + 1/beta - sin(lambda x)/lambda and
    /// v = x + 1/beta + sin(lambda x)/lambda (exponential-pair kernels).
    TrigRatio { beta: f64, lambda: f64 },
}

#[derive(Clone, Debug)]
pub struct HamiltonianH {
    pub h2: H2Form,
}

pub(crate) fn trig_u(beta: f64, lambda: f64, x: f64) -> f64 {
    x + 1.0 / beta - (lambda * x).sin() / lambda
}

pub(crate) fn trig_v(beta: f64, lambda: f64, x: f64) -> f64 {
    x + 1.0 / beta + (lambda * x).sin() / lambda
}

impl HamiltonianH {
    pub fn h2_eval(&self, x: f64) -> f64 {
        match &self.h2 {
            H2Form::Rational(r) => r.eval_c64(Complex64::new(x, 0.0)).re,
            H2Form::TrigRatio { beta, lambda } => {
                trig_u(*beta, *lambda, x) / trig_v(*beta, *lambda, x)
            }
        }
    }

    pub fn h2_eval_c64(&self, z: Complex64) -> Complex64 {
        match &self.h2 {
            H2Form::Rational(r) => r.eval_c64(z),
            H2Form::TrigRatio { beta, lambda } => {
                let u = z + 1.0 / beta - (z * *lambda).sin() / *lambda;
                let v = z + 1.0 / beta + (z * *lambda).sin() / *lambda;
                u / v
            }
        }
    }

    pub fn h1_eval(&self, x: f64) -> f64 {
        0.5 / self.h2_eval(x)
    }

    /// Q(xi) = 1/(2 h2^2).
    pub fn q_eval(&self, x: f64) -> f64 {
        let h = self.h2_eval(x);
        0.5 / (h * h)
    }

    /// H(xi) = 1/2 [[Q, 1],[1, 1/Q]].
    pub fn h_matrix(&self, xi: f64) -> [[f64; 2]; 2] {
        let q = self.q_eval(xi);
        [[0.5 * q, 0.5], [0.5, 0.5 / q]]
    }

    /// r^{-2}(x) = 2 h2^2(2x).
    pub fn r_inv_squared_eval(&self, x: f64) -> f64 {
        let h = self.h2_eval(2.0 * x);
        2.0 * h * h
    }

    /// Scale-free stand-in for r(x) = 1/(sqrt(2) h2(2x)): the constant factor
    /// does not affect the root/pole condition set, so the returned handle is
    /// 1/h2(2x) exactly (rational case) or v(2x)/u(2x) with declared real
    /// roots and poles (trigonometric case).
    pub fn r_condition_target(&self) -> Result<MeromorphicHandle, SpectralError> {
        match &self.h2 {
            H2Form::Rational(rf) => {
                let two = GaussianRational::from_i64(2);
                let scaled = rf.scale_arg(&two);
                MeromorphicHandle::rational(scaled.inv())
            }
            H2Form::TrigRatio { beta, lambda } => {
                let (b, l) = (*beta, *lambda);
                // r-target f(x) = v(2x)/u(2x); u and v are nondecreasing with
                // a single real root each.
                let root = bisect_increasing(move |z| trig_v(b, l, z), b, l) / 2.0;
                let pole = bisect_increasing(move |z| trig_u(b, l, z), b, l) / 2.0;
                let vv = move |x: f64| trig_v(b, l, 2.0 * x);
                let uu = move |x: f64| trig_u(b, l, 2.0 * x);
                let vp = move |x: f64| 2.0 * (1.0 + (2.0 * l * x).cos());
                let up = move |x: f64| 2.0 * (1.0 - (2.0 * l * x).cos());
                let vpp = move |x: f64| -4.0 * l * (2.0 * l * x).sin();
                let upp = move |x: f64| 4.0 * l * (2.0 * l * x).sin();
                let ratio = move |n: &dyn Fn(f64) -> f64,
                                  np: &dyn Fn(f64) -> f64,
                                  npp: &dyn Fn(f64) -> f64,
                                  d: &dyn Fn(f64) -> f64,
                                  dp: &dyn Fn(f64) -> f64,
                                  dpp: &dyn Fn(f64) -> f64,
                                  x: f64|
                      -> (f64, f64, f64) {
                    let (nv, n1, n2) = (n(x), np(x), npp(x));
                    let (dv, d1, d2) = (d(x), dp(x), dpp(x));
                    let f = nv / dv;
                    let f1 = (n1 * dv - nv * d1) / (dv * dv);
                    let f2 =
                        (n2 * dv - nv * d2) / (dv * dv) - 2.0 * d1 * (n1 * dv - nv * d1) / (dv * dv * dv);
                    (f, f1, f2)
                };
                let handle = CallableHandle {
                    f: [
                        Box::new(move |x| ratio(&vv, &vp, &vpp, &uu, &up, &upp, x).0),
                        Box::new(move |x| ratio(&vv, &vp, &vpp, &uu, &up, &upp, x).1),
                        Box::new(move |x| ratio(&vv, &vp, &vpp, &uu, &up, &upp, x).2),
                    ],
                    reciprocal: Some([
                        Box::new(move |x| ratio(&uu, &up, &upp, &vv, &vp, &vpp, x).0),
                        Box::new(move |x| ratio(&uu, &up, &upp, &vv, &vp, &vpp, x).1),
                        Box::new(move |x| ratio(&uu, &up, &upp, &vv, &vp, &vpp, x).2),
                    ]),
                    roots: vec![root],
                    poles: vec![pole],
                };
                MeromorphicHandle::callable(handle)
            }
        }
    }
}

/// Single real root of x + 1/beta +- sin(lambda x)/lambda (nondecreasing).
fn bisect_increasing(f: impl Fn(f64) -> f64, beta: f64, lambda: f64) -> f64 {
    let c = 1.0 / beta;
    let mut lo = -c - 1.0 / lambda - 0.5;
    let mut hi = -c + 1.0 / lambda + 0.5;
    debug_assert!(f(lo) < 0.0 && f(hi) > 0.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) <= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Wrap a closed-form h2 into the Hamiltonian bundle.
pub fn hamiltonian_from_h2(h2: H2Form) -> Result<HamiltonianH, OpidError> {
    if let H2Form::Rational(r) = &h2 {
        if r.is_zero() {
            return Err(OpidError::InvalidParameter("h2 must not vanish identically".into()));
        }
    }
    Ok(HamiltonianH { h2 })
}

/// Exact exponential-pair closed form: h2 = u/v per the kernel
/// k(x) = beta (e^{i lambda x} + e^{-i lambda x}).
pub fn exp_kernel_h2(beta: f64, lambda: f64) -> Result<HamiltonianH, OpidError> {
    if beta == 0.0 || lambda <= 0.0 {
        return Err(OpidError::InvalidParameter("need beta != 0, lambda > 0".into()));
    }
    Ok(HamiltonianH { h2: H2Form::TrigRatio { beta, lambda } })
}

/// The 2x2 auxiliary matrix T(xi) of the exponential-pair resolvent:
/// [[xi + 1/beta, e^{-i lambda xi} sin(lambda xi)/lambda],
///  [e^{i lambda xi} sin(lambda xi)/lambda, xi + 1/beta]].
pub fn exp_kernel_t_matrix(beta: f64, lambda: f64, xi: f64) -> [[Complex64; 2]; 2] {
    let d = Complex64::new(xi + 1.0 / beta, 0.0);
    let s = (lambda * xi).sin() / lambda;
    let e = Complex64::new(0.0, lambda * xi).exp();
    [[d, s / e], [s * e, d]]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Poly;
    use crate::spectral::r_condition_check;

    #[test]
    fn constant_h2() {
        let h = hamiltonian_from_h2(H2Form::Rational(RationalFunction::from_poly(Poly::one())))
            .unwrap();
        // Q = 1/2, H = 1/2 [[1/2, 1],[1, 2]]
        let m = h.h_matrix(0.7);
        assert!((m[0][0] - 0.25).abs() < 1e-15);
        assert!((m[0][1] - 0.5).abs() < 1e-15);
        assert!((m[1][1] - 1.0).abs() < 1e-15);
        // r = 1/sqrt(2): r^{-2} = 2
        assert!((h.r_inv_squared_eval(3.0) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn pairing_and_degeneracy() {
        let rf = RationalFunction::new(Poly::from_i64(&[-1, 0, 0, 1]), Poly::from_i64(&[2, 1]));
        let h = hamiltonian_from_h2(H2Form::Rational(rf)).unwrap();
        for &x in &[0.2, 0.9, 4.0] {
            assert!((h.h1_eval(x) * h.h2_eval(x) - 0.5).abs() < 1e-13);
            let m = h.h_matrix(x);
            let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
            assert!(det.abs() < 1e-13);
        }
    }

    #[test]
    fn exp_kernel_unit_value() {
        // beta = 1, lambda = pi, x = 1: sin(pi) = 0 so h2(1) = 2/2 = 1.
        let h = exp_kernel_h2(1.0, std::f64::consts::PI).unwrap();
        assert!((h.h2_eval(1.0) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn large_beta_limit() {
        // h2 -> (x - sin(lx)/l)/(x + sin(lx)/l) pointwise as beta grows.
        let l = 1.7;
        let h = exp_kernel_h2(1e9, l).unwrap();
        for &x in &[0.4, 1.2, 2.6] {
            let expect = (x - (l * x).sin() / l) / (x + (l * x).sin() / l);
            assert!((h.h2_eval(x) - expect).abs() < 1e-7);
        }
    }

    #[test]
    fn exp_kernel_r_conditions_pass() {
        let h = exp_kernel_h2(1.3, 2.4).unwrap();
        let target = h.r_condition_target().unwrap();
        let rep = r_condition_check(&target).unwrap();
        assert!(rep.passes, "{:?}", rep.diagnostics);
    }

    #[test]
    fn trig_r_target_derivatives_consistent() {
        // Finite-difference check of the closed-form derivatives.
        let h = exp_kernel_h2(0.8, 1.9).unwrap();
        let MeromorphicHandle::Callable(c) = h.r_condition_target().unwrap() else {
            panic!("expected callable");
        };
        let x = 0.37;
        let eps = 1e-6;
        let fd1 = ((c.f[0])(x + eps) - (c.f[0])(x - eps)) / (2.0 * eps);
        assert!((fd1 - (c.f[1])(x)).abs() < 1e-8 * (1.0 + fd1.abs()));
        let fd2 = ((c.f[1])(x + eps) - (c.f[1])(x - eps)) / (2.0 * eps);
        assert!((fd2 - (c.f[2])(x)).abs() < 1e-7 * (1.0 + fd2.abs()));
    }
}
