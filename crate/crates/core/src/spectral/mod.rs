//! Spectral-parameter pencils and the meromorphy conditions on the canonical
//! coefficient function r(x).

pub mod pencil;
pub mod rfunc;

pub use pencil::{charpoly_in_rho, pencil_integer_check, MatrixPencil, PencilSpectrumReport};
pub use rfunc::{
    canonical_from_r, r_condition_check, CallableHandle, ConditionReport, MeromorphicHandle,
    PointDiagnostic, PointKind, SpectralError,
};
