//! Exact and numerical machinery for meromorphic solutions of linear
//! differential systems and Painleve-type functions built from convolution
//! integral operators.
//!
//! The crate has two halves. The exact half (`exact`, `singular`, `spectral`,
//! and the symbolic parts of `opid`) decides strong regularity of singular
//! points and builds rational Hamiltonian data by big-rational arithmetic.
//! The numerical half (`fredholm`, `special`, and the evaluation parts of
//! `opid`) discretizes integral operators by Gauss-Legendre quadrature and
//! verifies Painleve-type identities to stated tolerances.

pub mod exact;
pub mod fredholm;
pub mod opid;
pub mod singular;
pub mod special;
pub mod spectral;
