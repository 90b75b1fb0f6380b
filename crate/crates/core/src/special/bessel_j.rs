//! Bessel J of real order nu > -1 on [0, 100].
//!
//! Small arguments use the ascending series; otherwise the value comes from
//! backward (Miller) recurrence down the order ladder, normalized by
//! (x/2)^nu = sum_k (nu+2k) Gamma(nu+k)/k! J_{nu+2k}(x), which works for
//! non-integer orders. Relative accuracy ~1e-13 over the contract domain.

use super::gamma::ln_gamma;

/// Ascending series, reliable for x <= 8 (no destructive cancellation there).
fn bessel_series(nu: f64, x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = (nu * (0.5 * x).ln() - ln_gamma(nu + 1.0)).exp();
    let mut sum = term;
    for k in 0..200 {
        let kf = k as f64;
        term *= -q / ((kf + 1.0) * (nu + kf + 1.0));
        sum += term;
        if term.abs() < 1e-18 * sum.abs().max(1e-280) {
            break;
        }
    }
    sum
}

/// Backward-recurrence evaluation; returns J_{nu+j}(x) for j = 0..=extra.
fn bessel_miller(nu: f64, x: f64, extra: usize) -> Vec<f64> {
    debug_assert!(x > 0.0);
    let start = (x + 14.0 * x.cbrt() + 45.0 + nu.max(0.0)) as usize + extra;
    // Even start index keeps the normalization sum aligned.
    let n = start + (start % 2);
    let mut f = vec![0.0f64; n + 2];
    f[n + 1] = 0.0;
    f[n] = 1e-280;
    for j in (0..n).rev() {
        f[j] = (2.0 * (nu + (j + 1) as f64) / x) * f[j + 1] - f[j + 2];
        if f[j].abs() > 1e250 {
            for v in f.iter_mut().skip(j) {
                *v *= 1e-250;
            }
        }
    }
    // Normalization sum over even ladder offsets:
    // S = sum_k c_k f_{2k}, c_k = (nu+2k) Gamma(nu+k)/k!, c_0 = Gamma(nu+1).
    let mut s = 0.0f64;
    for k in 0..=n / 2 {
        let c = if k == 0 {
            ln_gamma(nu + 1.0).exp()
        } else {
            let kf = k as f64;
            (nu + 2.0 * kf) * (ln_gamma(nu + kf) - ln_gamma(kf + 1.0)).exp()
        };
        s += c * f[2 * k];
    }
    let scale = (nu * (0.5 * x).ln()).exp() / s;
    (0..=extra).map(|j| f[j] * scale).collect()
}

/// J_nu(x) for nu > -1, 0 <= x <= 100.
pub fn bessel_j(nu: f64, x: f64) -> f64 {
    assert!(nu > -1.0, "order must exceed -1, got {nu}");
    assert!((0.0..=100.0 + 1e-9).contains(&x), "argument {x} outside [0, 100]");
    if x == 0.0 {
        return if nu == 0.0 {
            1.0
        } else if nu > 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
    }
    if x <= 8.0 {
        bessel_series(nu, x)
    } else {
        bessel_miller(nu, x, 0)[0]
    }
}

/// (J_nu(x), J_{nu+1}(x)) with one ladder evaluation.
pub fn bessel_j_pair(nu: f64, x: f64) -> (f64, f64) {
    assert!(nu > -1.0);
    if x == 0.0 {
        return (bessel_j(nu, 0.0), 0.0);
    }
    if x <= 8.0 {
        (bessel_series(nu, x), bessel_series(nu + 1.0, x))
    } else {
        let v = bessel_miller(nu, x, 1);
        (v[0], v[1])
    }
}

/// Derivative J_nu'(x) = (J_{nu-1}(x) - J_{nu+1}(x)) / 2; at x = 0 the limit
/// is 1/2 for nu = 1, 0 for nu > 1 or nu = 0.
pub fn bessel_j_derivative(nu: f64, x: f64) -> f64 {
    if x == 0.0 {
        return if nu == 1.0 {
            0.5
        } else if nu == 0.0 || nu > 1.0 {
            0.0
        } else {
            f64::INFINITY
        };
    }
    let (jn, jn1) = bessel_j_pair(nu, x);
    // J_{nu-1} by the three-term recurrence (stable in decreasing order).
    let jm1 = (2.0 * nu / x) * jn - jn1;
    0.5 * (jm1 - jn1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        // Reference values (15 digits): J_0(1), J_0(10), J_1(5)
        assert!((bessel_j(0.0, 1.0) - 0.765_197_686_557_966_6).abs() < 1e-13);
        assert!((bessel_j(0.0, 10.0) - (-0.245_935_764_451_348_4)).abs() < 1e-13);
        assert!((bessel_j(1.0, 5.0) - (-0.327_579_137_591_465_2)).abs() < 1e-13);
    }

    #[test]
    fn half_order_closed_form() {
        // J_{1/2}(x) = sqrt(2/(pi x)) sin x
        for &x in &[0.5, 2.0, 9.0, 40.0, 95.0] {
            let expect = (2.0 / (std::f64::consts::PI * x)).sqrt() * x.sin();
            let got = bessel_j(0.5, x);
            assert!(
                (got - expect).abs() <= 1e-12 * expect.abs().max(0.05),
                "x={x}: got {got}, expect {expect}"
            );
        }
        // J_{-1/2}(x) = sqrt(2/(pi x)) cos x
        for &x in &[0.7, 3.0, 25.0] {
            let expect = (2.0 / (std::f64::consts::PI * x)).sqrt() * x.cos();
            let got = bessel_j(-0.5, x);
            assert!((got - expect).abs() <= 1e-12 * expect.abs().max(0.05));
        }
    }

    #[test]
    fn recurrence_identity() {
        // J_{nu-1} + J_{nu+1} = (2 nu / x) J_nu
        for &nu in &[0.5, 1.0, 2.5, 7.0, 9.5] {
            for &x in &[0.3, 1.0, 4.0, 12.0, 33.0, 77.0] {
                let (jn, jp1) = bessel_j_pair(nu, x);
                let jm1 = bessel_j(nu - 1.0, x);
                let lhs = jm1 + jp1;
                let rhs = 2.0 * nu / x * jn;
                let scale = jm1.abs().max(jp1.abs()).max(1e-3);
                assert!(
                    (lhs - rhs).abs() < 1e-10 * scale,
                    "nu={nu}, x={x}: {lhs} vs {rhs}"
                );
            }
        }
    }

    #[test]
    fn series_miller_crossover_consistent() {
        for &nu in &[0.0, 0.5, 1.0, 3.25, 9.5] {
            for &x in &[6.0, 7.5, 8.0, 8.5, 10.0] {
                let s = bessel_series(nu, x);
                let m = bessel_miller(nu, x, 0)[0];
                assert!(
                    (s - m).abs() < 2e-12 * s.abs().max(0.02),
                    "nu={nu}, x={x}: series {s} vs miller {m}"
                );
            }
        }
    }

    #[test]
    fn zero_argument_limits() {
        assert_eq!(bessel_j(0.0, 0.0), 1.0);
        assert_eq!(bessel_j(2.5, 0.0), 0.0);
        assert!(bessel_j(-0.5, 0.0).is_infinite());
    }

    #[test]
    fn large_order_large_argument() {
        let v = bessel_j(10.0, 100.0);
        assert!((v - (-0.054_732_176_935_472_02)).abs() < 1e-13, "got {v}");
        let w = bessel_j(2.5, 7.7);
        assert!((w - (-0.286_940_767_425_195_14)).abs() < 1e-13, "got {w}");
    }
}
