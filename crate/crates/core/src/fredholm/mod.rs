//! Quadrature discretization of integral operators, Fredholm determinants,
//! and the Painleve-type sigma functions they generate.

pub mod bessel;
pub mod kernels;
pub mod nystrom;
pub mod probe;
pub mod sine;
pub mod quad;
pub mod sigma;

pub use bessel::{bessel_norm_bound, p3_det_log_derivative, sigma_p3, P3Point};
pub use kernels::{bessel_phi, bessel_psi, FredholmError, SmoothKernel};
pub use nystrom::{fredholm_det, nystrom_build, nystrom_build_real, DiscretizedOperator};
pub use probe::{analytic_continuation_probe, contour_residue, determinant_scan_real, linear_fit_r2, simplicity_fit, PoleCandidate, ProbeConfig, ProbePoint, ProbeResult, Rectangle};
pub use quad::GaussLegendre;
pub use sigma::{chebyshev_points, cheb_fit, ode_residual, SigmaFamily, SigmaTrace};
pub use sine::{h2_from_shifted_resolvent, parity_split, q_r_functions, sigma1, sigma2, sigma_p5_determinant, sigma_p5_inner_product, sigma_p5_resolvent_diag, triangular_q_values, ParitySplit, QrData};
