//! Special-case structural checks for singular systems.

use super::laurent::LaurentMatrixFunction;
use crate::exact::num::GaussianRational;
use crate::exact::ExactMatrix;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PatternError {
    #[error("pattern requires a 2x2 system")]
    NotTwoByTwo,
    #[error("pattern requires a pole of order exactly two in one off-diagonal entry")]
    NoSecondOrderCorner,
    #[error("entry ({0},{1}) violates the pattern: {2}")]
    EntryViolation(usize, usize, String),
    #[error("truncation too short to verify the pattern")]
    TruncationTooShort,
}

/// Data of the supported 2x2 second-order pole pattern:
/// one off-diagonal entry has a second-order pole gamma_{-2} u^{-2} +
/// gamma_{-1} u^{-1} + ..., the opposite entry vanishes to order >= 2, and
/// the diagonal is holomorphic with values alpha_0, beta_0 at the center.
/// `flipped` records whether the pole sits at (1,0) instead of (0,1).
#[derive(Clone, Debug)]
pub struct SecondOrderPattern {
    pub gamma_m2: GaussianRational,
    pub gamma_m1: GaussianRational,
    pub alpha_0: GaussianRational,
    pub beta_0: GaussianRational,
    pub flipped: bool,
}

fn pattern_oriented(
    a: &LaurentMatrixFunction,
    pole: (usize, usize),
) -> Result<SecondOrderPattern, PatternError> {
    let (pi, pj) = pole;
    let (zi, zj) = (pj, pi);
    let need = |k: i64| a.coeff(k).ok_or(PatternError::TruncationTooShort);
    let cm2 = need(-2)?;
    let cm1 = need(-1)?;
    let c0 = need(0)?;
    let c1 = need(1)?;
    if cm2[pole].is_zero() {
        return Err(PatternError::NoSecondOrderCorner);
    }
    // Diagonal holomorphic.
    for d in 0..2 {
        if !cm2[(d, d)].is_zero() || !cm1[(d, d)].is_zero() {
            return Err(PatternError::EntryViolation(d, d, "diagonal must be holomorphic".into()));
        }
    }
    // Opposite corner vanishes to order >= 2.
    for (k, c) in [(-2i64, &cm2), (-1, &cm1), (0, &c0), (1, &c1)] {
        if !c[(zi, zj)].is_zero() {
            return Err(PatternError::EntryViolation(
                zi,
                zj,
                format!("must vanish to order 2, has a nonzero coefficient at order {k}"),
            ));
        }
    }
    Ok(SecondOrderPattern {
        gamma_m2: cm2[pole].clone(),
        gamma_m1: cm1[pole].clone(),
        alpha_0: c0[(pi, pi)].clone(),
        beta_0: c0[(pj, pj)].clone(),
        flipped: pole == (1, 0),
    })
}

/// Match the supported second-order pole pattern in either orientation.
pub fn extract_second_order_pattern(
    a: &LaurentMatrixFunction,
) -> Result<SecondOrderPattern, PatternError> {
    if a.dim() != 2 {
        return Err(PatternError::NotTwoByTwo);
    }
    if a.lowest_order() != -2 {
        return Err(PatternError::NoSecondOrderCorner);
    }
    match pattern_oriented(a, (0, 1)) {
        Ok(p) => Ok(p),
        Err(PatternError::TruncationTooShort) => Err(PatternError::TruncationTooShort),
        Err(first) => match pattern_oriented(a, (1, 0)) {
            Ok(p) => Ok(p),
            Err(PatternError::NoSecondOrderCorner) => Err(first),
            Err(e) => Err(e),
        },
    }
}

/// Exact solvability test for the supported second-order pattern:
/// gamma_{-2} (alpha_0 - beta_0) = gamma_{-1}. Equivalent to the classifier
/// certifying strong regularity on this family.
pub fn second_order_pole_check(a: &LaurentMatrixFunction) -> Result<bool, PatternError> {
    let p = extract_second_order_pattern(a)?;
    let lhs = &p.gamma_m2 * &(&p.alpha_0 - &p.beta_0);
    Ok(lhs == p.gamma_m1)
}

/// Simple-pole-with-holomorphic-inverse condition:
/// a_{-1}^2 = -a_{-1} and a_{-1} a_0 a_{-1} = -a_0 a_{-1}, both exactly.
/// When true, the forward recurrence has the m = -1 family with
/// b_{-1} = a_{-1} c and b_0 = a_0 a_{-1} c.
pub fn katsnelson_volok_check(a_m1: &ExactMatrix, a_0: &ExactMatrix) -> bool {
    assert!(a_m1.is_square() && a_0.is_square());
    assert_eq!(a_m1.nrows(), a_0.nrows());
    let sq = a_m1 * a_m1;
    if sq != -a_m1 {
        return false;
    }
    let lhs = &(a_m1 * a_0) * a_m1;
    let rhs = -&(a_0 * a_m1);
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::num::GaussianRational as G;

    #[test]
    fn kv_zero_residue() {
        let z = ExactMatrix::zeros(2, 2);
        let a0 = ExactMatrix::from_i64(&[&[3, 1], &[2, -5]]);
        assert!(katsnelson_volok_check(&z, &a0));
    }

    #[test]
    fn kv_projector_diag() {
        let am1 = ExactMatrix::from_i64(&[&[-1, 0], &[0, 0]]);
        let a0 = ExactMatrix::from_i64(&[&[4, 0], &[0, 9]]);
        assert!(katsnelson_volok_check(&am1, &a0));
    }

    #[test]
    fn kv_violated_by_coupling() {
        let am1 = ExactMatrix::from_i64(&[&[-1, 0], &[0, 0]]);
        let a0 = ExactMatrix::from_i64(&[&[0, 0], &[1, 0]]);
        assert!(!katsnelson_volok_check(&am1, &a0));
    }

    fn pattern_system(gm2: i64, gm1: i64, a0: i64, b0: i64) -> LaurentMatrixFunction {
        let mut cm2 = ExactMatrix::zeros(2, 2);
        cm2[(0, 1)] = G::from_i64(gm2);
        let mut cm1 = ExactMatrix::zeros(2, 2);
        cm1[(0, 1)] = G::from_i64(gm1);
        let c0 = ExactMatrix::from_i64(&[&[a0, 0], &[0, b0]]);
        LaurentMatrixFunction::new(G::zero(), -2, vec![cm2, cm1, c0], true)
    }

    #[test]
    fn second_order_condition_cases() {
        // gamma_{-2}=1, alpha=2, beta=1, gamma_{-1}=1 -> holds
        assert!(second_order_pole_check(&pattern_system(1, 1, 2, 1)).unwrap());
        // alpha=beta, gamma_{-1}=0 -> holds
        assert!(second_order_pole_check(&pattern_system(3, 0, 5, 5)).unwrap());
        // alpha=beta, gamma_{-1}=1, gamma_{-2}=5 -> fails
        assert!(!second_order_pole_check(&pattern_system(5, 1, 4, 4)).unwrap());
    }

    #[test]
    fn pattern_mismatch_detected() {
        // Pole on the diagonal is not the supported shape.
        let mut cm2 = ExactMatrix::zeros(2, 2);
        cm2[(0, 0)] = G::one();
        let a = LaurentMatrixFunction::new(G::zero(), -2, vec![cm2], true);
        assert!(extract_second_order_pattern(&a).is_err());
    }

    #[test]
    fn flipped_pattern_recognized() {
        let mut cm2 = ExactMatrix::zeros(2, 2);
        cm2[(1, 0)] = G::from_i64(2);
        let a = LaurentMatrixFunction::new(G::zero(), -2, vec![cm2], true);
        let p = extract_second_order_pattern(&a).unwrap();
        assert!(p.flipped);
        assert_eq!(p.gamma_m2, G::from_i64(2));
    }
}
