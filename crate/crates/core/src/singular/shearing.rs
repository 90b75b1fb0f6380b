//! Shearing transformations: lowering one integer eigenvalue of the residue
//! matrix by one while leaving the rest of the spectrum unchanged.

use super::laurent::{gauge_transform, GaugeError, GaugeTransform, LaurentMatrixFunction};
use crate::exact::jordan::jordan_decomposition_ordered;
use crate::exact::num::GaussianRational;
use crate::exact::spectrum::{integer_eigenvalues, SpectrumError};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ShearError {
    #[error("residue matrix is not in (upper) Jordan form; apply a Jordan gauge first")]
    NotJordanAdapted,
    #[error("shearing requires a pole of order exactly one")]
    WrongPoleOrder,
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
    #[error(transparent)]
    Gauge(#[from] GaugeError),
}

fn residue_is_upper_jordan(a: &LaurentMatrixFunction) -> bool {
    let r = a.residue();
    let n = r.nrows();
    for i in 0..n {
        for j in 0..n {
            if j < i && !r[(i, j)].is_zero() {
                return false;
            }
            if j > i + 1 && !r[(i, j)].is_zero() {
                return false;
            }
            if j == i + 1 {
                let v = &r[(i, j)];
                if !(v.is_zero() || v.is_one()) {
                    return false;
                }
                // A unit on the superdiagonal demands equal eigenvalues.
                if v.is_one() && r[(i, i)] != r[(j, j)] {
                    return false;
                }
            }
        }
    }
    true
}

/// One shearing step on a Jordan-adapted system: the gauge
/// diag(I_{n-1}, u) lowers the eigenvalue in the trailing diagonal slot by
/// one and leaves every other eigenvalue unchanged.
pub fn shearing_step(a: &LaurentMatrixFunction) -> Result<LaurentMatrixFunction, ShearError> {
    if a.lowest_order() < -1 {
        return Err(ShearError::WrongPoleOrder);
    }
    if !residue_is_upper_jordan(a) {
        return Err(ShearError::NotJordanAdapted);
    }
    let n = a.dim();
    let mut exps = vec![0i64; n];
    exps[n - 1] = 1;
    let f = GaugeTransform::diag_monomials(a.center().clone(), &exps);
    Ok(gauge_transform(a, &f)?)
}

/// Reduce a first-order-pole system by constant (Jordan) and shearing gauges
/// until every integer eigenvalue of the residue matrix equals the smallest
/// one; non-integer eigenvalues are untouched. Requires the full residue
/// spectrum to be exactly representable in Q(i).
pub fn reduce_to_min_spectrum(
    a: &LaurentMatrixFunction,
) -> Result<LaurentMatrixFunction, ShearError> {
    if a.lowest_order() < -1 {
        return Err(ShearError::WrongPoleOrder);
    }
    let mut sys = a.clone();
    loop {
        let (ints, _) = integer_eigenvalues(&sys.residue());
        let Some(&(min, _)) = ints.first() else {
            return Ok(sys);
        };
        let &(max, _) = ints.last().unwrap();
        if min == max {
            return Ok(sys);
        }
        let target = GaussianRational::from_i64(max);
        let jf = jordan_decomposition_ordered(&sys.residue(), Some(&target))?;
        let conj = GaugeTransform::constant(sys.center().clone(), jf.transform.clone())?;
        sys = gauge_transform(&sys, &conj)?;
        sys = shearing_step(&sys)?;
    }
}
