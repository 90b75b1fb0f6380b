//! The operator-identity pipeline: from an even convolution kernel to the
//! accelerant primitive M, the exact resolvent data, the Hamiltonian H, the
//! string coefficient r, and numerical evaluation of the fundamental solution
//! of the induced canonical system.

pub mod fundsol;
pub mod ham;
pub mod kernel;
pub mod polyres;

pub use fundsol::{det2, fundamental_solution_eval};
pub use ham::{
    exp_kernel_h2, exp_kernel_t_matrix, hamiltonian_from_h2, H2Form, HamiltonianH,
};
pub use kernel::{m_function, AccelerantSystem, ConvolutionKernelSpec, KernelVariant, MFunction, OpidError};
pub use polyres::{
    gamma_log_derivative_check, poly_kernel_resolvent, residue_constant_mod, separate_kernel,
    ResolventBundle,
};
