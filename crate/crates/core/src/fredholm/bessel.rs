//! Bessel-kernel functionals: the operator-norm bound and the Painleve III
//! sigma function with its cross-identities.

use super::kernels::{bessel_phi, FredholmError, SmoothKernel};
use super::nystrom::nystrom_build_real;
use num_complex::Complex64;

type C = Complex64;

/// Largest singular value of the discretized T_xi together with the
/// norm <= |gamma| verdict (strict inequality expected at |gamma| = 1).
pub fn bessel_norm_bound(
    gamma: f64,
    alpha: f64,
    xi: f64,
    n: usize,
) -> Result<(f64, bool), FredholmError> {
    if alpha <= -1.0 {
        return Err(FredholmError::InvalidParameter(format!(
            "Bessel order must exceed -1, got {alpha}"
        )));
    }
    let op = nystrom_build_real(&SmoothKernel::Bessel { gamma, alpha }, 0.0, xi, n)?;
    let norm = op.t_norm_estimate();
    Ok((norm, norm <= gamma.abs() + 1e-8))
}

/// One evaluation of the Bessel-kernel (gamma = -1) sigma data at s.
#[derive(Clone, Debug)]
pub struct P3Point {
    /// sigma(s) = (1/4)(S_s^{-1} phi, phi)_s.
    pub sigma: f64,
    /// q(s) = [S_s^{-1} phi](s).
    pub q: f64,
    /// R(s, s), the resolvent diagonal.
    pub r_diag: f64,
}

/// sigma(s), q(s) and R(s,s) for gamma = -1 and order alpha >= 0.
pub fn sigma_p3(s: f64, alpha: f64, n: usize) -> Result<P3Point, FredholmError> {
    if alpha < 0.0 {
        return Err(FredholmError::InvalidParameter(format!(
            "the gamma = -1 theory needs alpha >= 0, got {alpha}"
        )));
    }
    if s <= 0.0 {
        return Ok(P3Point { sigma: 0.0, q: bessel_phi(alpha, 0.0), r_diag: 0.0 });
    }
    let kernel = SmoothKernel::Bessel { gamma: -1.0, alpha };
    let op = nystrom_build_real(&kernel, 0.0, s, n)?;
    let phi = |x: f64| C::new(bessel_phi(alpha, x), 0.0);
    let sigma = 0.25
        * op.bilinear(&|x| phi(x.re), &|x| phi(x.re))?
            .re;
    let fv: Vec<C> = op.nodes.iter().map(|&x| phi(x.re)).collect();
    let ytilde = op.solve_tilde(&fv)?;
    let q = op.extend_real(&|x| phi(x), &ytilde, s).re;
    let r_diag = op.gamma_value(s, s)?.re;
    Ok(P3Point { sigma, q, r_diag })
}

/// -d/ds log det S_s by fourth-order central differences (the Bessel kernel
/// is evaluated on the real axis only, so no complex step here).
pub fn p3_det_log_derivative(s: f64, alpha: f64, n: usize) -> Result<f64, FredholmError> {
    let kernel = SmoothKernel::Bessel { gamma: -1.0, alpha };
    let h = 1e-3 * s.max(0.1);
    let d = |x: f64| -> Result<f64, FredholmError> {
        Ok(nystrom_build_real(&kernel, 0.0, x, n)?.det().re.ln())
    };
    let v = (d(s - 2.0 * h)? - 8.0 * d(s - h)? + 8.0 * d(s + h)? - d(s + 2.0 * h)?)
        / (12.0 * h);
    Ok(-v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_gamma_zero_norm() {
        let (norm, ok) = bessel_norm_bound(0.0, 0.0, 1.0, 32).unwrap();
        assert!(norm < 1e-12);
        assert!(ok);
    }

    #[test]
    fn norm_strictly_below_one() {
        for &(alpha, xi) in &[(0.0, 1.0), (1.0, 3.0)] {
            let (norm, ok) = bessel_norm_bound(1.0, alpha, xi, 90).unwrap();
            assert!(ok, "alpha={alpha}, xi={xi}: norm {norm}");
            assert!(norm < 1.0, "alpha={alpha}, xi={xi}: norm {norm}");
        }
    }

    #[test]
    fn norm_scales_with_gamma() {
        let (n1, _) = bessel_norm_bound(1.0, 0.5, 2.0, 64).unwrap();
        let (nh, ok) = bessel_norm_bound(0.5, 0.5, 2.0, 64).unwrap();
        assert!(ok);
        assert!((nh - 0.5 * n1).abs() < 1e-12);
        assert!(nh <= 0.5);
    }

    #[test]
    fn sigma_vanishes_at_origin() {
        let p = sigma_p3(0.0, 0.0, 32).unwrap();
        assert_eq!(p.sigma, 0.0);
        // Continuity: small s gives small sigma.
        let p2 = sigma_p3(1e-3, 0.0, 32).unwrap();
        assert!(p2.sigma.abs() < 1e-3);
    }

    #[test]
    fn hard_edge_identities() {
        // [s R(s)]' = q^2/4 and R = -d/ds log det S_s, alpha = 0, s = 1.
        let alpha = 0.0;
        let s = 1.0;
        let n = 110;
        let h = 1e-4;
        let p = sigma_p3(s + h, alpha, n).unwrap();
        let m = sigma_p3(s - h, alpha, n).unwrap();
        let at = sigma_p3(s, alpha, n).unwrap();
        let fd = ((s + h) * p.r_diag - (s - h) * m.r_diag) / (2.0 * h);
        let expect = at.q * at.q / 4.0;
        assert!((fd - expect).abs() < 1e-6, "{fd} vs {expect}");

        let logdet = p3_det_log_derivative(s, alpha, n).unwrap();
        assert!((logdet - at.r_diag).abs() < 1e-6, "{logdet} vs {}", at.r_diag);
    }

    #[test]
    fn sigma_equals_s_r_diag() {
        // sigma(s) = s R(s, s): the two routes must agree.
        for &(s, alpha) in &[(0.7, 0.0), (1.5, 1.0)] {
            let p = sigma_p3(s, alpha, 110).unwrap();
            assert!(
                (p.sigma - s * p.r_diag).abs() < 1e-7,
                "s={s}, alpha={alpha}: {} vs {}",
                p.sigma,
                s * p.r_diag
            );
        }
    }
}
