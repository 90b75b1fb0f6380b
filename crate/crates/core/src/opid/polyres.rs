//! Exact symbolic resolvent for even polynomial convolution kernels.
//!
//! For k a real even polynomial of degree 2m the kernel separates as
//! k(x-t) = sum_{s=0}^{2m} x^s p_s(t), so inverting S_xi = I + K on (0, xi)
//! reduces to the (2m+1)x(2m+1) linear system with matrix
//! A_xi[j][s] = delta_{js} + int_0^xi t^s p_j(t) dt, whose entries are exact
//! polynomials in xi. Everything downstream (the determinant, h2, the
//! resolvent boundary value) is exact rational-function arithmetic.

use super::kernel::OpidError;
use crate::exact::num::GaussianRational;
use crate::exact::polymat::{poly_det_bareiss, poly_det_with_column};
use crate::exact::ratfunc::RationalFunction;
use crate::exact::spectrum::{coeff_scale, complex_roots};
use crate::exact::Poly;
use num_complex::Complex64;

/// Exact resolvent data for an even polynomial kernel.
#[derive(Clone, Debug)]
pub struct ResolventBundle {
    /// Kernel polynomial k.
    pub kernel: Poly,
    /// Separated components p_s(t) of k(x - t).
    pub p_parts: Vec<Poly>,
    /// Delta_xi = det A_xi.
    pub delta: Poly,
    /// Cramer numerators d_s(xi) for the right-hand side f = 1.
    pub d_cols: Vec<Poly>,
    /// h2(xi) = g(xi, xi) where S_xi g = 1.
    pub h2: RationalFunction,
    /// Gamma_xi(0, xi), the resolvent boundary value driving the
    /// log-derivative identity h2' = Gamma0 h2.
    pub gamma0: RationalFunction,
    /// Certified numeric roots of Delta (the singular interval lengths).
    pub singular_points: Vec<Complex64>,
}

fn binomial(n: usize, k: usize) -> GaussianRational {
    let mut num = GaussianRational::one();
    for i in 0..k {
        num = &num * &GaussianRational::from_i64((n - i) as i64);
        num = &num / &GaussianRational::from_i64((i + 1) as i64);
    }
    num
}

/// Separation k(x - t) = sum_s x^s p_s(t): p_s(t) = sum_{j >= s} kappa_j
/// C(j, s) (-t)^{j-s}.
pub fn separate_kernel(k: &Poly) -> Vec<Poly> {
    let deg = k.degree().unwrap_or(0);
    let mut parts = Vec::with_capacity(deg + 1);
    for s in 0..=deg {
        let mut coeffs = vec![GaussianRational::zero(); deg - s + 1];
        for j in s..=deg {
            let kappa = k.coeff(j);
            if kappa.is_zero() {
                continue;
            }
            let mut c = &kappa * &binomial(j, s);
            if (j - s) % 2 == 1 {
                c = -c;
            }
            coeffs[j - s] = c;
        }
        parts.push(Poly::new(coeffs));
    }
    parts
}

/// int_0^xi t^s p(t) dt as a polynomial in xi.
fn moment_integral(p: &Poly, s: usize) -> Poly {
    let mut coeffs = vec![GaussianRational::zero(); p.coeffs().len() + s + 2];
    for (r, c) in p.coeffs().iter().enumerate() {
        let power = s + r + 1;
        coeffs[power] = c / &GaussianRational::from_i64(power as i64);
    }
    Poly::new(coeffs)
}

/// Build the exact resolvent bundle for an even real polynomial kernel of
/// degree at most 8.
pub fn poly_kernel_resolvent(k: &Poly) -> Result<ResolventBundle, OpidError> {
    let even_real = k
        .coeffs()
        .iter()
        .enumerate()
        .all(|(i, c)| c.is_real() && (i % 2 == 0 || c.is_zero()));
    if !even_real {
        return Err(OpidError::NotEvenReal);
    }
    let deg = k.degree().unwrap_or(0);
    if deg > 8 {
        return Err(OpidError::DegreeTooLarge(deg));
    }
    let parts = separate_kernel(k);
    let n = parts.len();
    // A[j][s] = delta_{js} + int_0^xi t^s p_j(t) dt.
    let a: Vec<Vec<Poly>> = (0..n)
        .map(|j| {
            (0..n)
                .map(|s| {
                    let mut e = moment_integral(&parts[j], s);
                    if j == s {
                        e = &e + &Poly::one();
                    }
                    e
                })
                .collect()
        })
        .collect();
    let delta = poly_det_bareiss(&a);
    // Right-hand side for f = 1: (1, p_j)_xi.
    let rhs: Vec<Poly> = parts.iter().map(|p| moment_integral(p, 0)).collect();
    let d_cols: Vec<Poly> = (0..n)
        .map(|s| poly_det_with_column(&a, s, &rhs))
        .collect();
    // h2 = 1 - sum_s c_s xi^s with c_s = d_s / Delta.
    let mut num = delta.clone();
    for (s, d) in d_cols.iter().enumerate() {
        let shifted = d * &Poly::monomial(GaussianRational::one(), s);
        num = &num - &shifted;
    }
    let h2 = RationalFunction::new(num, delta.clone());
    // Gamma_xi(0, xi) = -D_0(xi, xi)/Delta with the s = 0 Cramer column
    // replaced by p_j(xi).
    let p_at_xi: Vec<Poly> = parts.iter().cloned().collect();
    let d0 = poly_det_with_column(&a, 0, &p_at_xi);
    let gamma0 = RationalFunction::new(-&d0, delta.clone());
    // Certified numeric singular points.
    let sf = delta.squarefree_part();
    let scale = coeff_scale(&sf);
    let singular_points = complex_roots(&sf)
        .into_iter()
        .inspect(|&z| {
            let resid = sf.eval_c64(z).norm();
            assert!(resid < 1e-10 * scale, "uncertified root of Delta: residual {resid:e}");
        })
        .collect();
    Ok(ResolventBundle {
        kernel: k.clone(),
        p_parts: parts,
        delta,
        d_cols,
        h2,
        gamma0,
        singular_points,
    })
}

/// Exact check of the log-derivative identity h2' = Gamma0 h2.
pub fn gamma_log_derivative_check(bundle: &ResolventBundle) -> bool {
    let lhs = bundle.h2.derivative();
    let rhs = &bundle.gamma0 * &bundle.h2;
    lhs == rhs
}

/// If every residue of `f` at the roots of `modulus` is one and the same
/// rational constant, return it. Requires the roots of `modulus` to be simple
/// roots of the denominator of `f`. Works in the quotient ring
/// Q(i)[x]/(modulus): the residue function num/den' reduces to a constant
/// exactly when all residues agree.
pub fn residue_constant_mod(f: &RationalFunction, modulus: &Poly) -> Option<GaussianRational> {
    let den_prime = f.den().derivative();
    let inv = den_prime.inverse_mod(modulus)?;
    let prod = (&f.num().div_rem(modulus).1 * &inv).div_rem(modulus).1;
    if prod.is_constant() {
        Some(prod.coeff(0))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::num::GaussianRational as G;
    use crate::fredholm::quad::GaussLegendre;

    fn poly_frac(entries: &[(usize, i64, i64)]) -> Poly {
        let deg = entries.iter().map(|&(k, _, _)| k).max().unwrap_or(0);
        let mut v = vec![G::zero(); deg + 1];
        for &(k, n, d) in entries {
            v[k] = G::frac(n, d);
        }
        Poly::new(v)
    }

    #[test]
    fn zero_kernel_trivial() {
        let b = poly_kernel_resolvent(&Poly::zero()).unwrap();
        assert_eq!(b.delta, Poly::one());
        assert!(b.h2.is_constant());
        assert!(b.gamma0.is_zero());
        assert!(gamma_log_derivative_check(&b));
    }

    #[test]
    fn constant_kernel_closed_form() {
        // k = c: rank-one equation, Delta = 1 + c xi, h2 = 1/(1 + c xi).
        let c = 3i64;
        let b = poly_kernel_resolvent(&poly_frac(&[(0, c, 1)])).unwrap();
        assert_eq!(b.delta, Poly::from_i64(&[1, c]));
        let expect = RationalFunction::new(Poly::one(), Poly::from_i64(&[1, c]));
        assert_eq!(b.h2, expect);
        assert!(gamma_log_derivative_check(&b));
        // Gamma0 = h2'/h2 = -c/(1+c xi)
        let g = RationalFunction::new(Poly::from_i64(&[-c]), Poly::from_i64(&[1, c]));
        assert_eq!(b.gamma0, g);
    }

    #[test]
    fn separation_reconstructs_kernel() {
        // k(x-t) must equal sum_s x^s p_s(t) pointwise.
        let k = poly_frac(&[(0, 1, 2), (2, -2, 3), (4, 1, 5)]);
        let parts = separate_kernel(&k);
        for &(x, t) in &[(0.3, 0.9), (1.5, -0.4), (2.0, 2.0)] {
            let direct = k.eval_c64(Complex64::new(x - t, 0.0)).re;
            let split: f64 = parts
                .iter()
                .enumerate()
                .map(|(s, p)| x.powi(s as i32) * p.eval_c64(Complex64::new(t, 0.0)).re)
                .sum();
            assert!((direct - split).abs() < 1e-12, "x={x}, t={t}");
        }
    }

    #[test]
    fn quadratic_kernel_exact_data() {
        // k = x^2: p_0 = t^2, p_1 = -2t, p_2 = 1.
        let b = poly_kernel_resolvent(&poly_frac(&[(2, 1, 1)])).unwrap();
        assert_eq!(b.p_parts[0], Poly::from_i64(&[0, 0, 1]));
        assert_eq!(b.p_parts[1], Poly::from_i64(&[0, -2]));
        assert_eq!(b.p_parts[2], Poly::from_i64(&[1]));
        // Delta = xi^9/1080 - xi^6/30 + 1.
        let delta_expect = poly_frac(&[(9, 1, 1080), (6, -1, 30), (0, 1, 1)]);
        assert_eq!(b.delta, delta_expect);
        // h2 = (xi^3/6 - 1)/(xi^6/180 - xi^3/6 - 1).
        let h2_expect = RationalFunction::new(
            poly_frac(&[(3, 1, 6), (0, -1, 1)]),
            poly_frac(&[(6, 1, 180), (3, -1, 6), (0, -1, 1)]),
        );
        assert_eq!(b.h2, h2_expect);
        assert!(gamma_log_derivative_check(&b));
    }

    #[test]
    fn quartic_kernel_identity() {
        let b = poly_kernel_resolvent(&poly_frac(&[(4, 1, 1), (2, -1, 2), (0, 1, 3)])).unwrap();
        assert!(gamma_log_derivative_check(&b));
        // h2(0) = 1 for every kernel.
        assert!(b.h2.eval(&G::zero()).unwrap().is_one());
        // Delta has real coefficients.
        assert!(b.delta.is_real());
    }

    #[test]
    fn h2_matches_nystrom_inversion() {
        // Independent oracle: solve (I + K)g = 1 on (0, xi) by quadrature and
        // compare g(xi) with the exact h2(xi).
        let kp = poly_frac(&[(2, 1, 1)]);
        let b = poly_kernel_resolvent(&kp).unwrap();
        let quad = GaussLegendre::new(80);
        for &xi in &[0.4, 0.9, 1.3] {
            let (x, w) = quad.mapped(0.0, xi);
            let n = x.len();
            let mut mat = nalgebra::DMatrix::<f64>::identity(n, n);
            for i in 0..n {
                for j in 0..n {
                    let kij = kp.eval_c64(Complex64::new(x[i] - x[j], 0.0)).re;
                    mat[(i, j)] += kij * w[j];
                }
            }
            let rhs = nalgebra::DVector::<f64>::from_element(n, 1.0);
            let g = mat.lu().solve(&rhs).unwrap();
            // Nystrom extension to the endpoint xi.
            let mut g_xi = 1.0;
            for j in 0..n {
                let kj = kp.eval_c64(Complex64::new(xi - x[j], 0.0)).re;
                g_xi -= kj * w[j] * g[j];
            }
            let exact = b.h2.eval_c64(Complex64::new(xi, 0.0)).re;
            assert!((g_xi - exact).abs() < 1e-10, "xi={xi}: {g_xi} vs {exact}");
        }
    }

    #[test]
    fn residues_of_gamma0_for_quadratic_kernel() {
        let b = poly_kernel_resolvent(&poly_frac(&[(2, 1, 1)])).unwrap();
        // +1 at the three roots of xi^3 = 6.
        let m1 = poly_frac(&[(3, 1, 1), (0, -6, 1)]);
        assert_eq!(residue_constant_mod(&b.gamma0, &m1), Some(G::one()));
        // -1 at the six roots of xi^6 - 30 xi^3 - 180.
        let m2 = poly_frac(&[(6, 1, 1), (3, -30, 1), (0, -180, 1)]);
        assert_eq!(residue_constant_mod(&b.gamma0, &m2), Some(G::from_i64(-1)));
    }
}
