//! Exact big-rational substrate: Q(i) scalars, polynomials, rational
//! functions, dense matrices, spectra, Jordan decompositions, and
//! possibly-singular linear solves.

pub mod jordan;
pub mod mat;
pub mod num;
pub mod poly;
pub mod polymat;
pub mod ratfunc;
pub mod spectrum;

pub use jordan::{jordan_decomposition, jordan_decomposition_ordered, JordanForm};
pub use mat::{solve_possibly_singular, ExactMatrix, LinearSolution};
pub use num::{GaussianRational, Rat};
pub use poly::Poly;
pub use ratfunc::{ratfunc_roots_poles, RationalFunction, RootLocation, RootsPoles};
pub use spectrum::{
    integer_eigenvalues, integer_spectrum, ExactEigenvalue, SpectrumError, SpectrumReport,
};
