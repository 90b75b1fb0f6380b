//! Sampled sigma functions with spectral differentiation and sigma-form ODE
//! residuals.

use super::kernels::FredholmError;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

/// Which sigma-form ODE a trace is checked against.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SigmaFamily {
    /// (x s'')^2 + 4 (x s' - s)(x s' - s + s'^2) = 0.
    P5,
    /// (x s'')^2 + s'(s - x s')(4 s' - 1) - alpha^2 s'^2 = 0.
    P3 { alpha: f64 },
}

/// Sampled sigma with derivatives and pointwise ODE residuals.
#[derive(Clone, Debug)]
pub struct SigmaTrace {
    pub family: SigmaFamily,
    pub xs: Vec<f64>,
    pub sigma: Vec<Complex64>,
    pub d1: Vec<f64>,
    pub d2: Vec<f64>,
    pub residual: Vec<f64>,
    pub n_quad: usize,
    pub fit_degree: usize,
}

/// Chebyshev points of the second kind on [a, b], ascending.
pub fn chebyshev_points(a: f64, b: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2);
    (0..n)
        .map(|j| {
            let theta = std::f64::consts::PI * (j as f64) / ((n - 1) as f64);
            let u = -theta.cos(); // ascending
            0.5 * (a + b) + 0.5 * (b - a) * u
        })
        .collect()
}

fn cheb_basis_row(u: f64, degree: usize) -> Vec<f64> {
    let mut row = Vec::with_capacity(degree + 1);
    let mut t0 = 1.0;
    let mut t1 = u;
    row.push(t0);
    if degree >= 1 {
        row.push(t1);
    }
    for _ in 2..=degree {
        let t2 = 2.0 * u * t1 - t0;
        row.push(t2);
        t0 = t1;
        t1 = t2;
    }
    row
}

/// Coefficients of p' in the Chebyshev basis from those of p (on [-1, 1]).
fn cheb_derivative(a: &[f64]) -> Vec<f64> {
    let d = a.len().saturating_sub(1);
    if d == 0 {
        return vec![0.0];
    }
    let mut c = vec![0.0f64; d + 2];
    for k in (1..=d).rev() {
        c[k - 1] = c[k + 1] + 2.0 * (k as f64) * a[k];
    }
    c[0] *= 0.5;
    c.truncate(d);
    if c.is_empty() {
        c.push(0.0);
    }
    c
}

fn cheb_eval(coeffs: &[f64], u: f64) -> f64 {
    // Clenshaw recurrence.
    let mut b1 = 0.0f64;
    let mut b2 = 0.0f64;
    for &c in coeffs.iter().rev() {
        let b0 = 2.0 * u * b1 - b2 + c;
        b2 = b1;
        b1 = b0;
    }
    b1 - u * b2
}

/// Least-squares Chebyshev fit of samples on [a, b]; returns coefficients.
pub fn cheb_fit(xs: &[f64], ys: &[f64], a: f64, b: f64, degree: usize) -> Vec<f64> {
    let n = xs.len();
    assert!(degree + 1 <= n, "fit degree must not exceed the sample count");
    let mut mat = DMatrix::<f64>::zeros(n, degree + 1);
    for (i, &x) in xs.iter().enumerate() {
        let u = (2.0 * x - (a + b)) / (b - a);
        for (j, v) in cheb_basis_row(u, degree).into_iter().enumerate() {
            mat[(i, j)] = v;
        }
    }
    let rhs = DVector::<f64>::from_column_slice(ys);
    let svd = mat.svd(true, true);
    let sol = svd.solve(&rhs, 1e-14).expect("least-squares solve");
    sol.iter().copied().collect()
}

impl SigmaTrace {
    /// Assemble a trace from samples: fit a Chebyshev polynomial of the given
    /// degree to the real part, differentiate spectrally, and record the
    /// pointwise sigma-form residuals.
    ///
    /// The default degree is max(18, samples/11). That keeps the fit
    /// truncation-dominated, so doubling the sample count visibly shrinks the
    /// residual instead of parking both runs on the differentiation noise
    /// floor; pass an explicit degree (about samples/8) when the smallest
    /// absolute residual matters more than convergence behavior.
    pub fn from_samples(
        family: SigmaFamily,
        xs: Vec<f64>,
        sigma: Vec<Complex64>,
        n_quad: usize,
        fit_degree: Option<usize>,
    ) -> Result<Self, FredholmError> {
        if xs.len() < 64 {
            return Err(FredholmError::GridTooCoarse(xs.len(), 64));
        }
        assert_eq!(xs.len(), sigma.len());
        let a = xs.first().copied().unwrap();
        let b = xs.last().copied().unwrap();
        assert!(b > a, "grid must be increasing");
        let degree = fit_degree
            .unwrap_or_else(|| (xs.len() / 11).max(18))
            .min(xs.len() - 1);
        let ys: Vec<f64> = sigma.iter().map(|s| s.re).collect();
        let coeffs = cheb_fit(&xs, &ys, a, b, degree);
        let dcoeffs = cheb_derivative(&coeffs);
        let ddcoeffs = cheb_derivative(&dcoeffs);
        let scale = 2.0 / (b - a);
        let to_u = |x: f64| (2.0 * x - (a + b)) / (b - a);
        let d1: Vec<f64> = xs.iter().map(|&x| cheb_eval(&dcoeffs, to_u(x)) * scale).collect();
        let d2: Vec<f64> = xs
            .iter()
            .map(|&x| cheb_eval(&ddcoeffs, to_u(x)) * scale * scale)
            .collect();
        let residual: Vec<f64> = xs
            .iter()
            .enumerate()
            .map(|(i, &x)| family_residual(family, x, ys[i], d1[i], d2[i]))
            .collect();
        Ok(Self { family, xs, sigma, d1, d2, residual, n_quad, fit_degree: degree })
    }

    /// CSV with deterministic 17-significant-digit formatting.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,re_sigma,im_sigma,sigma_prime,sigma_second,residual\n");
        for i in 0..self.xs.len() {
            out.push_str(&format!(
                "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}\n",
                self.xs[i],
                self.sigma[i].re,
                self.sigma[i].im,
                self.d1[i],
                self.d2[i],
                self.residual[i]
            ));
        }
        out
    }
}

fn family_residual(family: SigmaFamily, x: f64, s: f64, s1: f64, s2: f64) -> f64 {
    match family {
        SigmaFamily::P5 => {
            let t1 = (x * s2).powi(2);
            let t2 = 4.0 * (x * s1 - s) * (x * s1 - s + s1 * s1);
            let denom = t1.abs().max(t2.abs()).max(1e-30);
            (t1 + t2).abs() / denom
        }
        SigmaFamily::P3 { alpha } => {
            let t1 = (x * s2).powi(2);
            let t2 = s1 * (s - x * s1) * (4.0 * s1 - 1.0);
            let t3 = -alpha * alpha * s1 * s1;
            let denom = t1.abs().max(t2.abs()).max(t3.abs()).max(1e-30);
            (t1 + t2 + t3).abs() / denom
        }
    }
}

/// Maximum pointwise relative residual of the trace against its sigma-form
/// ODE.
pub fn ode_residual(trace: &SigmaTrace) -> f64 {
    trace.residual.iter().fold(0.0f64, |m, &r| m.max(r))
}
