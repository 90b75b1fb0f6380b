//! Numerical evaluation of the fundamental solution W(xi, rho) of the
//! canonical system built from a convolution kernel.
//!
//! W(xi, rho) = I_2 + i rho J Pi* S_xi^{-1} (I - rho A)^{-1} Pi with
//! A f = i int_0^x f, Pi = [Phi_1, Phi_2] = [M(x), 1], J the flip matrix.
//! The Volterra inverse has the closed form
//! (I - rho A)^{-1} f (x) = f(x) + i rho int_0^x e^{i rho (x-t)} f(t) dt,
//! so one Nystrom solve and four inner products produce W.

use super::kernel::{m_function, ConvolutionKernelSpec, OpidError};
use crate::fredholm::quad::GaussLegendre;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

type C = Complex64;

/// Evaluate W(xi, rho) with an n-point Gauss-Legendre discretization.
pub fn fundamental_solution_eval(
    kernel: &ConvolutionKernelSpec,
    xi: f64,
    rho: C,
    n_quad: usize,
) -> Result<[[C; 2]; 2], OpidError> {
    assert!(xi > 0.0, "interval length must be positive");
    assert!(n_quad >= 8, "need at least 8 quadrature nodes");
    let acc = m_function(kernel);
    let rule = GaussLegendre::new(n_quad);
    let (x, w) = rule.mapped(0.0, xi);
    let n = x.len();

    // Columns of Pi at the nodes.
    let phi = |l: usize, t: f64| -> f64 {
        if l == 0 {
            acc.m.eval(t)
        } else {
            1.0
        }
    };

    // (I - rho A)^{-1} Phi_l at each node via a per-node sub-rule; the
    // integrand is entire so a fixed 48-point rule is spectrally accurate.
    let sub = GaussLegendre::new(48);
    let volterra = |l: usize| -> Vec<C> {
        x.iter()
            .map(|&xi_node| {
                let (ts, tw) = sub.mapped(0.0, xi_node);
                let mut acc_int = C::new(0.0, 0.0);
                for (&t, &wt) in ts.iter().zip(&tw) {
                    let e = (C::i() * rho * (xi_node - t)).exp();
                    acc_int += e * phi(l, t) * wt;
                }
                C::new(phi(l, xi_node), 0.0) + C::i() * rho * acc_int
            })
            .collect()
    };

    // Symmetrized Nystrom matrix for S_xi = I + K.
    let sqrt_w: Vec<f64> = w.iter().map(|v| v.sqrt()).collect();
    let mut s = DMatrix::<C>::identity(n, n);
    for i in 0..n {
        for j in 0..n {
            let kij = kernel.eval(x[i] - x[j]);
            s[(i, j)] += C::new(kij * sqrt_w[i] * sqrt_w[j], 0.0);
        }
    }
    let lu = s.lu();
    // Cheap singularity guard via the pivot spread.
    let (mut dmin, mut dmax) = (f64::INFINITY, 0.0f64);
    for i in 0..n {
        let d = lu.u()[(i, i)].norm();
        dmin = dmin.min(d);
        dmax = dmax.max(d);
    }
    if dmin == 0.0 || dmax / dmin > 1e12 {
        return Err(OpidError::SingularOperator);
    }

    let mut b = [[C::new(0.0, 0.0); 2]; 2];
    for l in 0..2 {
        let v = volterra(l);
        let rhs = DVector::<C>::from_iterator(
            n,
            v.iter().zip(&sqrt_w).map(|(vi, sw)| vi * *sw),
        );
        let y = lu.solve(&rhs).ok_or(OpidError::SingularOperator)?;
        for j in 0..2 {
            // (S^{-1} v, Phi_j) with the weight folded back out of the
            // symmetrization.
            let mut acc_ip = C::new(0.0, 0.0);
            for i in 0..n {
                acc_ip += y[i] * sqrt_w[i] * phi(j, x[i]);
            }
            b[j][l] = acc_ip;
        }
    }

    // W = I + i rho J B.
    let irho = C::i() * rho;
    Ok([
        [C::new(1.0, 0.0) + irho * b[1][0], irho * b[1][1]],
        [irho * b[0][0], C::new(1.0, 0.0) + irho * b[0][1]],
    ])
}

/// det of a 2x2 complex matrix.
pub fn det2(m: &[[C; 2]; 2]) -> C {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}
