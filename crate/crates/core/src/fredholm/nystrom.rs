//! Nystrom discretization of S = I + T on an interval, with symmetric
//! weighting so the matrix determinant approximates the Fredholm determinant
//! directly and spectrally for analytic kernels.

use super::kernels::{FredholmError, SmoothKernel};
use super::quad::GaussLegendre;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

type C = Complex64;

/// Discretized operator I + T on (0, z) (complex scale) or a real interval
/// (a, b). Nodes carry the interval map; `matrix` is I + W^{1/2} K W^{1/2}
/// with W the effective quadrature weights.
#[derive(Clone, Debug)]
pub struct DiscretizedOperator {
    pub kernel: SmoothKernel,
    /// Quadrature points mapped into the interval (complex for scaled builds).
    pub nodes: Vec<C>,
    /// Effective weights (scale times base weights).
    pub eff_weights: Vec<C>,
    /// Principal square roots of the effective weights.
    sqrt_w: Vec<C>,
    /// I + W^{1/2} K W^{1/2} for complex-scaled builds.
    pub matrix: Option<DMatrix<C>>,
    /// I + W^{1/2} K W^{1/2} for real builds (symmetric).
    pub real_matrix: Option<DMatrix<f64>>,
    /// Right endpoint (or complex scale) of the interval.
    pub scale: C,
}

const MIN_NODES: usize = 8;

fn build_common(
    kernel: &SmoothKernel,
    nodes: Vec<C>,
    eff_weights: Vec<C>,
    scale: C,
    real: bool,
) -> Result<DiscretizedOperator, FredholmError> {
    let n = nodes.len();
    let sqrt_w: Vec<C> = eff_weights.iter().map(|w| w.sqrt()).collect();
    // Real builds keep an f64 matrix only; a complex view is assembled on
    // demand. Complex-scaled builds go straight to the complex matrix.
    if real {
        let mut rm = DMatrix::<f64>::identity(n, n);
        for i in 0..n {
            // symmetric kernel: fill the upper triangle and mirror
            for j in i..n {
                let kij = kernel.eval_real(nodes[i].re, nodes[j].re);
                let v = sqrt_w[i].re * kij * sqrt_w[j].re;
                rm[(i, j)] += v;
                if j != i {
                    rm[(j, i)] += v;
                }
            }
        }
        Ok(DiscretizedOperator {
            kernel: kernel.clone(),
            nodes,
            eff_weights,
            sqrt_w,
            matrix: None,
            real_matrix: Some(rm),
            scale,
        })
    } else {
        let mut matrix = DMatrix::<C>::identity(n, n);
        for i in 0..n {
            for j in 0..n {
                let kij = kernel.eval_complex(nodes[i], nodes[j])?;
                matrix[(i, j)] += sqrt_w[i] * kij * sqrt_w[j];
            }
        }
        Ok(DiscretizedOperator {
            kernel: kernel.clone(),
            nodes,
            eff_weights,
            sqrt_w,
            matrix: Some(matrix),
            real_matrix: None,
            scale,
        })
    }
}

/// Build the scaled operator on (0, z): T(z) f = z int_0^1 k(zx, zt) f(t) dt.
/// Real positive z produces a real symmetric build; complex z requires a
/// kernel that continues off the real axis.
pub fn nystrom_build(
    kernel: &SmoothKernel,
    z: C,
    n: usize,
) -> Result<DiscretizedOperator, FredholmError> {
    if n < MIN_NODES {
        return Err(FredholmError::GridTooCoarse(n, MIN_NODES));
    }
    let real = z.im == 0.0 && z.re > 0.0;
    if !real && !kernel.supports_complex_scale() {
        return Err(FredholmError::InvalidRegion(z));
    }
    let rule = GaussLegendre::new(n);
    let (u, w) = rule.mapped(0.0, 1.0);
    let nodes: Vec<C> = u.iter().map(|&ui| z * ui).collect();
    let eff: Vec<C> = w.iter().map(|&wi| z * wi).collect();
    build_common(kernel, nodes, eff, z, real)
}

/// Build on a real interval (a, b).
pub fn nystrom_build_real(
    kernel: &SmoothKernel,
    a: f64,
    b: f64,
    n: usize,
) -> Result<DiscretizedOperator, FredholmError> {
    if n < MIN_NODES {
        return Err(FredholmError::GridTooCoarse(n, MIN_NODES));
    }
    if !(b > a) {
        return Err(FredholmError::InvalidParameter(format!("empty interval ({a}, {b})")));
    }
    let rule = GaussLegendre::new(n);
    let (x, w) = rule.mapped(a, b);
    let nodes: Vec<C> = x.iter().map(|&v| C::new(v, 0.0)).collect();
    let eff: Vec<C> = w.iter().map(|&v| C::new(v, 0.0)).collect();
    build_common(kernel, nodes, eff, C::new(b, 0.0), true)
}

impl DiscretizedOperator {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Fredholm determinant det(I + T) of the discretization.
    pub fn det(&self) -> C {
        match (&self.real_matrix, &self.matrix) {
            (Some(rm), _) => C::new(rm.clone().lu().determinant(), 0.0),
            (None, Some(m)) => m.clone().lu().determinant(),
            (None, None) => unreachable!(),
        }
    }

    fn pivot_guard(dmin: f64, dmax: f64) -> Result<(), FredholmError> {
        if dmin == 0.0 || dmax / dmin > 1e12 {
            return Err(FredholmError::NearSingular(dmax / dmin.max(f64::MIN_POSITIVE)));
        }
        Ok(())
    }

    /// Solve the symmetrized system for f given at the nodes; returns the
    /// weighted solution ytilde with [S^-1 f](x_i) = ytilde_i / sqrt(w_i).
    pub fn solve_tilde(&self, f_at_nodes: &[C]) -> Result<Vec<C>, FredholmError> {
        let n = self.len();
        if let Some(rm) = &self.real_matrix {
            let lu = rm.clone().lu();
            let (mut dmin, mut dmax) = (f64::INFINITY, 0.0f64);
            for i in 0..n {
                let d = lu.u()[(i, i)].abs();
                dmin = dmin.min(d);
                dmax = dmax.max(d);
            }
            Self::pivot_guard(dmin, dmax)?;
            let re = DVector::<f64>::from_iterator(
                n,
                f_at_nodes.iter().zip(&self.sqrt_w).map(|(f, s)| (f * s).re),
            );
            let im = DVector::<f64>::from_iterator(
                n,
                f_at_nodes.iter().zip(&self.sqrt_w).map(|(f, s)| (f * s).im),
            );
            let yre = lu.solve(&re).ok_or(FredholmError::NearSingular(f64::INFINITY))?;
            let yim = lu.solve(&im).ok_or(FredholmError::NearSingular(f64::INFINITY))?;
            Ok((0..n).map(|i| C::new(yre[i], yim[i])).collect())
        } else {
            let m = self.matrix.as_ref().unwrap();
            let lu = m.clone().lu();
            let (mut dmin, mut dmax) = (f64::INFINITY, 0.0f64);
            for i in 0..n {
                let d = lu.u()[(i, i)].norm();
                dmin = dmin.min(d);
                dmax = dmax.max(d);
            }
            Self::pivot_guard(dmin, dmax)?;
            let rhs = DVector::<C>::from_iterator(
                n,
                f_at_nodes.iter().zip(&self.sqrt_w).map(|(f, s)| f * s),
            );
            let y = lu.solve(&rhs).ok_or(FredholmError::NearSingular(f64::INFINITY))?;
            Ok(y.iter().copied().collect())
        }
    }

    /// (S^-1 f, g)_interval. `g_star` must be the conjugate-analytic
    /// extension of the second factor: on the real axis it is conj(g); for
    /// entire g with real-axis-real coefficients it is w -> conj(g(conj w)).
    pub fn bilinear(
        &self,
        f: &dyn Fn(C) -> C,
        g_star: &dyn Fn(C) -> C,
    ) -> Result<C, FredholmError> {
        let fv: Vec<C> = self.nodes.iter().map(|&x| f(x)).collect();
        let y = self.solve_tilde(&fv)?;
        let mut acc = C::new(0.0, 0.0);
        for i in 0..self.len() {
            acc += self.sqrt_w[i] * y[i] * g_star(self.nodes[i]);
        }
        Ok(acc)
    }

    /// Nystrom extension of S^-1 f to an arbitrary real point x:
    /// [S^-1 f](x) = f(x) - sum_j w_j k(x, x_j) [S^-1 f](x_j).
    pub fn extend_real(&self, f: &dyn Fn(f64) -> C, ytilde: &[C], x: f64) -> C {
        let mut acc = f(x);
        for j in 0..self.len() {
            let k = self.kernel.eval_real(x, self.nodes[j].re);
            acc -= self.sqrt_w[j] * ytilde[j] * k;
        }
        acc
    }

    /// Resolvent kernel value Gamma(x, y) of S^-1 = I + Gamma at real points:
    /// Gamma(x, y) = -[S^-1 tau(., y)](x) with tau the kernel of T.
    pub fn gamma_value(&self, x: f64, y: f64) -> Result<C, FredholmError> {
        let col: Vec<C> = self
            .nodes
            .iter()
            .map(|&xi| C::new(self.kernel.eval_real(xi.re, y), 0.0))
            .collect();
        let ytilde = self.solve_tilde(&col)?;
        let f = |xx: f64| C::new(self.kernel.eval_real(xx, y), 0.0);
        Ok(-self.extend_real(&f, &ytilde, x))
    }

    /// Largest singular value of the discretized T (real builds): for the
    /// symmetric kernels used here this is the largest absolute eigenvalue.
    pub fn t_norm_estimate(&self) -> f64 {
        let rm = self
            .real_matrix
            .as_ref()
            .expect("norm estimate needs a real build");
        let n = self.len();
        let mut t = rm.clone();
        for i in 0..n {
            t[(i, i)] -= 1.0;
        }
        let sym = nalgebra::SymmetricEigen::new(t);
        sym.eigenvalues.iter().fold(0.0f64, |m, &v| m.max(v.abs()))
    }

    /// All eigenvalues of the discretized T (real builds).
    pub fn t_eigenvalues(&self) -> Vec<f64> {
        let rm = self
            .real_matrix
            .as_ref()
            .expect("eigenvalues need a real build");
        let n = self.len();
        let mut t = rm.clone();
        for i in 0..n {
            t[(i, i)] -= 1.0;
        }
        let sym = nalgebra::SymmetricEigen::new(t);
        sym.eigenvalues.iter().copied().collect()
    }
}

/// det(I + T) for the scaled build; thin wrapper used by determinant scans.
pub fn fredholm_det(op: &DiscretizedOperator) -> C {
    op.det()
}
