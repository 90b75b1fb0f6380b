//! Sine-kernel functionals: the Painleve V sigma function by three routes,
//! the q/r boundary functions, parity-split determinants, and the discrete
//! triangular-factorization view of q.

use super::kernels::{FredholmError, SmoothKernel};
use super::nystrom::{nystrom_build, nystrom_build_real, DiscretizedOperator};
use num_complex::Complex64;
use std::sync::Arc;

type C = Complex64;

const PI: f64 = std::f64::consts::PI;

fn eip(x: C) -> C {
    (C::i() * x * PI).exp()
}

fn eip_star(x: C) -> C {
    (-C::i() * x * PI).exp()
}

/// sigma(x) = -(S_{2t}^{-1} e^{i u pi}, e^{i u pi})_{(0,2t)} with x = 2 pi t
/// and gamma = -1 (inner-product route).
pub fn sigma_p5_inner_product(x: f64, n: usize) -> Result<C, FredholmError> {
    let t = x / (2.0 * PI);
    let op = nystrom_build_real(&SmoothKernel::Sine { gamma: -1.0 }, 0.0, 2.0 * t, n)?;
    Ok(-op.bilinear(&eip, &eip_star)?)
}

/// sigma(x) = (x/pi) D'(x/pi)/D(x/pi) with D(xi) = det(I + T(xi)), gamma = -1
/// (determinant route, complex-step differentiation).
pub fn sigma_p5_determinant(x: f64, n: usize) -> Result<C, FredholmError> {
    let xi = x / PI;
    let h = 1e-100;
    let k = SmoothKernel::Sine { gamma: -1.0 };
    let d0 = nystrom_build(&k, C::new(xi, 0.0), n)?.det();
    let dh = nystrom_build(&k, C::new(xi, h), n)?.det();
    let dprime = dh.im / h;
    Ok(C::new(xi * dprime / d0.re, 0.0))
}

/// sigma(x) = -2t R(t,t) with R(t,t) the resolvent-kernel diagonal of the
/// symmetric-interval operator on (-t, t), gamma = -1.
pub fn sigma_p5_resolvent_diag(x: f64, n: usize) -> Result<C, FredholmError> {
    let t = x / (2.0 * PI);
    let op = nystrom_build_real(&SmoothKernel::Sine { gamma: -1.0 }, -t, t, n)?;
    let r = op.gamma_value(t, t)?;
    Ok(-2.0 * t * r)
}

/// Boundary functions of the gamma = -1 sine-kernel theory at half-length t.
#[derive(Clone, Debug)]
pub struct QrData {
    /// r(t) = [S_t^{-1} e^{iu pi}](t) on (-t, t).
    pub r: C,
    /// q(t) = [S~_t^{-1} e^{iu pi}](t) on (0, t).
    pub q: C,
    /// R(t, t), the resolvent diagonal on (-t, t).
    pub r_diag: f64,
}

pub fn q_r_functions(t: f64, n: usize) -> Result<QrData, FredholmError> {
    if t == 0.0 {
        return Ok(QrData { r: C::new(1.0, 0.0), q: C::new(1.0, 0.0), r_diag: 0.0 });
    }
    let kernel = SmoothKernel::Sine { gamma: -1.0 };
    let sym = nystrom_build_real(&kernel, -t, t, n)?;
    let fv: Vec<C> = sym.nodes.iter().map(|&x| eip(x)).collect();
    let ytilde = sym.solve_tilde(&fv)?;
    let r = sym.extend_real(&|x| eip(C::new(x, 0.0)), &ytilde, t);
    let r_diag = sym.gamma_value(t, t)?.re;

    let half = nystrom_build_real(&kernel, 0.0, t, n)?;
    let fh: Vec<C> = half.nodes.iter().map(|&x| eip(x)).collect();
    let yh = half.solve_tilde(&fh)?;
    let q = half.extend_real(&|x| eip(C::new(x, 0.0)), &yh, t);
    Ok(QrData { r, q, r_diag })
}

/// Parity-split determinants of the symmetric-interval sine operator:
/// D on (-t, t), D+ and D- on (0, t) with kernels k(x-y) +- k(x+y).
#[derive(Clone, Debug)]
pub struct ParitySplit {
    pub d: f64,
    pub d_plus: f64,
    pub d_minus: f64,
    /// D_- / D_+, which equals h2(2t).
    pub ratio: f64,
}

pub fn parity_split(gamma: f64, t: f64, n: usize) -> Result<ParitySplit, FredholmError> {
    let full = nystrom_build_real(&SmoothKernel::Sine { gamma }, -t, t, n)?;
    let d = full.det().re;
    let even = SmoothKernel::Custom(Arc::new(move |x: C, y: C| {
        (super::super::special::sinc_pi_c64(x - y) + super::super::special::sinc_pi_c64(x + y))
            * gamma
    }));
    let odd = SmoothKernel::Custom(Arc::new(move |x: C, y: C| {
        (super::super::special::sinc_pi_c64(x - y) - super::super::special::sinc_pi_c64(x + y))
            * gamma
    }));
    let d_plus = nystrom_build_real(&even, 0.0, t, n)?.det().re;
    let d_minus = nystrom_build_real(&odd, 0.0, t, n)?.det().re;
    Ok(ParitySplit { d, d_plus, d_minus, ratio: d_minus / d_plus })
}

/// h2(2t) by the resolvent route: h2(xi) = [S_xi^{-1} 1](xi) on (0, xi) with
/// xi = 2t (the shifted operator of the symmetric-interval theory).
pub fn h2_from_shifted_resolvent(gamma: f64, t: f64, n: usize) -> Result<f64, FredholmError> {
    let xi = 2.0 * t;
    let op = nystrom_build_real(&SmoothKernel::Sine { gamma }, 0.0, xi, n)?;
    let ones: Vec<C> = vec![C::new(1.0, 0.0); op.len()];
    let ytilde = op.solve_tilde(&ones)?;
    Ok(op.extend_real(&|_| C::new(1.0, 0.0), &ytilde, xi).re)
}

/// sigma_2(xi) = (S_xi^{-1} 1, 1)_xi for the sine kernel.
pub fn sigma2(gamma: f64, xi: f64, n: usize) -> Result<C, FredholmError> {
    let op = nystrom_build_real(&SmoothKernel::Sine { gamma }, 0.0, xi, n)?;
    op.bilinear(&|_| C::new(1.0, 0.0), &|_| C::new(1.0, 0.0))
}

/// sigma_1(z, gamma, lambda) = (S_z^{-1} e^{ix lambda}, e^{ix lambda})_z,
/// analytically continued in the interval length z.
pub fn sigma1(z: C, gamma: f64, lambda: f64, n: usize) -> Result<C, FredholmError> {
    let op = nystrom_build(&SmoothKernel::Sine { gamma }, z, n)?;
    op.bilinear(
        &|x| (C::i() * x * lambda).exp(),
        &|x| (-C::i() * x * lambda).exp(),
    )
}

/// Discrete triangular-factorization view: the Cholesky factor L of the
/// symmetrized positive matrix S~ acts as the causal factor S_-, so
/// [L^{-1} W^{1/2} f]_i / sqrt(w_i) approximates q(x_i) = [S_-^{-1} f](x_i).
pub fn triangular_q_values(t: f64, n: usize) -> Result<Vec<(f64, C)>, FredholmError> {
    let op = nystrom_build_real(&SmoothKernel::Sine { gamma: -1.0 }, 0.0, t, n)?;
    let rm = op
        .real_matrix
        .as_ref()
        .expect("real build")
        .clone();
    let chol = nalgebra::Cholesky::new(rm)
        .ok_or(FredholmError::NearSingular(f64::INFINITY))?;
    let l = chol.l();
    // Forward substitution for the complex rhs W^{1/2} e^{iu pi}.
    let nn = op.len();
    let mut y = vec![C::new(0.0, 0.0); nn];
    for i in 0..nn {
        let mut acc = eip(op.nodes[i]) * op.eff_weights[i].sqrt();
        for j in 0..i {
            acc -= C::new(l[(i, j)], 0.0) * y[j];
        }
        y[i] = acc / l[(i, i)];
    }
    Ok((0..nn)
        .map(|i| {
            let w = op.eff_weights[i].re.sqrt();
            (op.nodes[i].re, y[i] / w)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_x_leading_term() {
        // sigma(x) -> -x/pi as x -> 0+.
        for &x in &[0.02, 0.05] {
            let s = sigma_p5_inner_product(x, 24).unwrap();
            let lead = -x / PI;
            assert!((s.re - lead).abs() < 0.02 * lead.abs(), "x={x}: {s} vs {lead}");
            assert!(s.im.abs() < 1e-12);
        }
    }

    #[test]
    fn dual_routes_agree() {
        for &x in &[1.0, 2.0, 4.0] {
            let a = sigma_p5_inner_product(x, 120).unwrap().re;
            let b = sigma_p5_determinant(x, 120).unwrap().re;
            let c = sigma_p5_resolvent_diag(x, 120).unwrap().re;
            assert!((a - b).abs() < 1e-7, "x={x}: ip {a} vs det {b}");
            assert!((a - c).abs() < 1e-7, "x={x}: ip {a} vs diag {c}");
        }
    }

    #[test]
    fn q_r_identities() {
        // q(2t) = r(t) e^{it pi} and d/dt [t R(t,t)] = |r(t)|^2.
        for &t in &[0.25, 0.5] {
            let n = 100;
            let at = q_r_functions(t, n).unwrap();
            let at2 = q_r_functions(2.0 * t, n).unwrap();
            let shift = (C::i() * t * PI).exp();
            let lhs = at2.q;
            let rhs = at.r * shift;
            assert!((lhs - rhs).norm() < 1e-8, "t={t}: {lhs} vs {rhs}");

            let h = 1e-4;
            let p = q_r_functions(t + h, n).unwrap();
            let m = q_r_functions(t - h, n).unwrap();
            let fd = ((t + h) * p.r_diag - (t - h) * m.r_diag) / (2.0 * h);
            let expect = at.r.norm_sqr();
            assert!((fd - expect).abs() < 1e-6, "t={t}: {fd} vs {expect}");
        }
    }

    #[test]
    fn trivial_endpoint() {
        let d = q_r_functions(0.0, 32).unwrap();
        assert_eq!(d.q, C::new(1.0, 0.0));
        assert_eq!(d.r, C::new(1.0, 0.0));
    }

    #[test]
    fn parity_product_identity() {
        for &t in &[0.25, 0.5, 1.0] {
            let p = parity_split(-1.0, t, 90).unwrap();
            assert!(
                (p.d - p.d_plus * p.d_minus).abs() < 1e-10 * p.d.abs().max(1e-3),
                "t={t}: D={} D+D-={}",
                p.d,
                p.d_plus * p.d_minus
            );
        }
    }

    #[test]
    fn parity_trivial_when_gamma_zero() {
        let p = parity_split(0.0, 0.7, 24).unwrap();
        assert!((p.d - 1.0).abs() < 1e-13);
        assert!((p.d_plus - 1.0).abs() < 1e-13);
        assert!((p.d_minus - 1.0).abs() < 1e-13);
        assert!((p.ratio - 1.0).abs() < 1e-13);
    }

    #[test]
    fn ratio_equals_h2() {
        for &t in &[0.25, 0.5, 1.0] {
            let p = parity_split(-1.0, t, 90).unwrap();
            let h2 = h2_from_shifted_resolvent(-1.0, t, 120).unwrap();
            assert!((p.ratio - h2).abs() < 1e-8, "t={t}: ratio {} vs h2 {}", p.ratio, h2);
        }
    }

    #[test]
    fn sigma2_real_on_real_axis() {
        for &xi in &[0.5, 2.0, 5.5] {
            let s = sigma2(-0.7, xi, 80).unwrap();
            assert!(s.im.abs() < 1e-10, "xi={xi}: {s}");
        }
    }

    #[test]
    fn triangular_factor_reproduces_q() {
        // Error at matching nodes must shrink when n doubles.
        let t = 1.0;
        let mut errs = Vec::new();
        for &n in &[64usize, 128] {
            let vals = triangular_q_values(t, n).unwrap();
            // compare q at a few interior nodes against per-subinterval solves
            let mut max_err = 0.0f64;
            for &frac in &[0.25f64, 0.5, 0.75, 1.0] {
                let (x, qv) = vals
                    .iter()
                    .min_by(|a, b| {
                        (a.0 - frac * t).abs().total_cmp(&(b.0 - frac * t).abs())
                    })
                    .copied()
                    .unwrap();
                let direct = q_r_functions(x, 160).unwrap().q;
                max_err = max_err.max((qv - direct).norm());
            }
            errs.push(max_err);
        }
        assert!(
            errs[1] < errs[0],
            "triangular q error must decrease: {errs:?}"
        );
        assert!(errs[1] < 5e-2, "{errs:?}");
    }
}
