//! Strong-regularity classification of a singular point.
//!
//! A point is strong regular when the fundamental solution is a pure Laurent
//! series (no monodromy exponent). The classifier decides this by exact
//! arithmetic: any non-integer eigenvalue of the residue matrix rejects
//! immediately; otherwise both coefficient recurrences are run and a witness
//! pair (W, W^-1) with W W^-1 = I through the truncation budget certifies the
//! verdict. Truncation can exhaust before certification, so `Inconclusive`
//! is a first-class outcome.

use super::laurent::{gauge_transform, GaugeError, GaugeTransform, LaurentMatrixFunction};
use super::patterns::{extract_second_order_pattern, PatternError};
use super::recurrence::{
    forward_recurrence, inverse_recurrence, LaurentSolution, RecurrenceError,
};
use crate::exact::spectrum::integer_eigenvalues;
use crate::exact::ExactMatrix;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("poles of order {0} are not supported (order <= 2 with the handled pattern)")]
    UnsupportedPoleOrder(i64),
    #[error("second-order pole does not match the supported off-diagonal pattern: {0}")]
    PatternMismatch(#[from] PatternError),
    #[error(transparent)]
    Gauge(#[from] GaugeError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    StrongRegular,
    NotStrongRegular,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reason {
    NonIntegerEigenvalue,
    RecurrenceInfeasible,
    ProductCheckFailed,
    ExactArithmeticUnavailable,
}

/// Certified witness: truncated series for W and W^-1 with product I.
#[derive(Clone, Debug)]
pub struct WitnessPair {
    pub w: LaurentSolution,
    pub w_inv: LaurentSolution,
}

#[derive(Clone, Debug)]
pub struct ClassificationReport {
    pub verdict: Verdict,
    pub reason: Option<Reason>,
    pub witness: Option<WitnessPair>,
    /// Highest order through which the witness product was verified.
    pub checked_order: Option<i64>,
}

impl ClassificationReport {
    fn rejected(reason: Reason) -> Self {
        Self { verdict: Verdict::NotStrongRegular, reason: Some(reason), witness: None, checked_order: None }
    }

    fn inconclusive(reason: Reason) -> Self {
        Self { verdict: Verdict::Inconclusive, reason: Some(reason), witness: None, checked_order: None }
    }
}

fn assemble(families: &[LaurentSolution], n: usize, hi: i64) -> LaurentSolution {
    let lo = families.iter().map(|f| f.leading).min().unwrap();
    let mut coeffs = vec![ExactMatrix::zeros(n, n); (hi - lo + 1) as usize];
    let mut col = 0usize;
    for fam in families {
        for c in 0..fam.rank {
            for (k, m) in fam.coeffs.iter().enumerate() {
                let order = fam.leading + k as i64;
                if order > hi {
                    break;
                }
                for i in 0..n {
                    coeffs[(order - lo) as usize][(i, col)] = m[(i, c)].clone();
                }
            }
            col += 1;
        }
    }
    debug_assert_eq!(col, n);
    LaurentSolution {
        leading: lo,
        coeffs,
        rank: n,
        free_params: "fundamental candidate; any constant invertible right factor".into(),
    }
}

fn assemble_rows(families: &[LaurentSolution], n: usize, hi: i64) -> LaurentSolution {
    let lo = families.iter().map(|f| f.leading).min().unwrap();
    let mut coeffs = vec![ExactMatrix::zeros(n, n); (hi - lo + 1) as usize];
    let mut row = 0usize;
    for fam in families {
        for r in 0..fam.rank {
            for (k, m) in fam.coeffs.iter().enumerate() {
                let order = fam.leading + k as i64;
                if order > hi {
                    break;
                }
                for j in 0..n {
                    coeffs[(order - lo) as usize][(row, j)] = m[(r, j)].clone();
                }
            }
            row += 1;
        }
    }
    debug_assert_eq!(row, n);
    LaurentSolution {
        leading: lo,
        coeffs,
        rank: n,
        free_params: "fundamental candidate for the inverse system".into(),
    }
}

/// Mostly-first-order classification core; `a` must have lowest order >= -1.
fn classify_first_order(a: &LaurentMatrixFunction, k: i64) -> ClassificationReport {
    let n = a.dim();
    let residue = a.residue();
    let (ints, non_integer_degree) = integer_eigenvalues(&residue);
    if non_integer_degree > 0 {
        return ClassificationReport::rejected(Reason::NonIntegerEigenvalue);
    }
    debug_assert!(!ints.is_empty());

    let forward = match forward_recurrence(a, k) {
        Ok(f) => f,
        Err(RecurrenceError::Infeasible { .. }) => {
            return ClassificationReport::rejected(Reason::RecurrenceInfeasible)
        }
        Err(RecurrenceError::NoIntegerEigenvalue) => {
            return ClassificationReport::rejected(Reason::NonIntegerEigenvalue)
        }
        Err(RecurrenceError::TruncationTooShort { .. }) => {
            return ClassificationReport::inconclusive(Reason::ProductCheckFailed)
        }
        Err(RecurrenceError::WrongPoleOrder) => unreachable!("caller reduced the pole order"),
    };
    let inverse = match inverse_recurrence(a, k) {
        Ok(f) => f,
        Err(RecurrenceError::Infeasible { .. }) => {
            return ClassificationReport::rejected(Reason::RecurrenceInfeasible)
        }
        Err(RecurrenceError::NoIntegerEigenvalue) => {
            return ClassificationReport::rejected(Reason::NonIntegerEigenvalue)
        }
        Err(RecurrenceError::TruncationTooShort { .. }) => {
            return ClassificationReport::inconclusive(Reason::ProductCheckFailed)
        }
        Err(RecurrenceError::WrongPoleOrder) => unreachable!(),
    };

    let hi_w = forward.iter().map(|f| f.order_window().1).min().unwrap();
    let hi_y = inverse.iter().map(|f| f.order_window().1).min().unwrap();
    let w = assemble(&forward, n, hi_w);
    let y = assemble_rows(&inverse, n, hi_y);

    // Y(x) W(x) is exactly constant when both satisfy their systems; the
    // constant must be invertible for the families to pair into a witness.
    let ws = w.as_series(a.center());
    let ys = y.as_series(a.center());
    let prod = ys.mul(&ws);
    let hi_prod = match prod.known_upper() {
        Some(h) => h,
        None => prod.stored_upper(),
    };
    if hi_prod < 0 {
        return ClassificationReport::inconclusive(Reason::ProductCheckFailed);
    }
    for order in prod.lowest_order()..=hi_prod {
        if order == 0 {
            continue;
        }
        let c = prod.coeff(order).unwrap();
        if !c.is_zero() {
            // Mathematically impossible for true solution families; treat as
            // a failed certification rather than asserting.
            return ClassificationReport::inconclusive(Reason::ProductCheckFailed);
        }
    }
    let c = prod.coeff(0).unwrap();
    let Some(c_inv) = c.inverse() else {
        return ClassificationReport::inconclusive(Reason::ProductCheckFailed);
    };
    // W^-1 = C^-1 Y.
    let w_inv_coeffs: Vec<ExactMatrix> = y.coeffs.iter().map(|m| &c_inv * m).collect();
    let w_inv = LaurentSolution {
        leading: y.leading,
        coeffs: w_inv_coeffs,
        rank: n,
        free_params: "two-sided inverse of the certified witness".into(),
    };
    // Final product check W * W^-1 = I through the budget.
    let winv_s = w_inv.as_series(a.center());
    let check = ws.mul(&winv_s);
    let hi_check = check.known_upper().unwrap_or_else(|| check.stored_upper());
    for order in check.lowest_order()..=hi_check {
        let c = check.coeff(order).unwrap();
        let expect = if order == 0 {
            ExactMatrix::identity(n)
        } else {
            ExactMatrix::zeros(n, n)
        };
        if c != expect {
            return ClassificationReport::inconclusive(Reason::ProductCheckFailed);
        }
    }
    ClassificationReport {
        verdict: Verdict::StrongRegular,
        reason: None,
        witness: Some(WitnessPair { w, w_inv }),
        checked_order: Some(hi_check),
    }
}

/// Map a witness through W = F V given the report for the V-system.
fn pull_back_witness(
    report: ClassificationReport,
    f: &GaugeTransform,
) -> ClassificationReport {
    let Some(wit) = report.witness else { return report };
    let center = f.matrix().center().clone();
    let v = wit.w.as_series(&center);
    let v_inv = wit.w_inv.as_series(&center);
    let w = f.matrix().mul(&v);
    let w_inv = v_inv.mul(f.inverse_matrix());
    let to_solution = |s: &LaurentMatrixFunction, desc: &str| {
        let lo = s.lowest_order();
        let coeffs = (lo..=s.stored_upper()).map(|k| s.coeff(k).unwrap()).collect();
        LaurentSolution { leading: lo, coeffs, rank: s.dim(), free_params: desc.into() }
    };
    ClassificationReport {
        witness: Some(WitnessPair {
            w: to_solution(&w, "witness pulled back through the reducing gauge"),
            w_inv: to_solution(&w_inv, "inverse witness pulled back through the reducing gauge"),
        }),
        ..report
    }
}

/// Classify the singular point of dW/dx = A(x)W at the expansion center.
///
/// Poles of order one are handled directly; order-two poles are accepted only
/// in the off-diagonal pattern with a second-order pole in one corner and a
/// matching zero of order two opposite, via the explicit reducing gauge
/// diag(1/u, 1). `k` is the truncation order for the witness product check.
pub fn strong_regularity_classify(
    a: &LaurentMatrixFunction,
    k: i64,
) -> Result<ClassificationReport, ClassifyError> {
    let lo = a.lowest_order();
    if lo < -2 {
        return Err(ClassifyError::UnsupportedPoleOrder(lo));
    }
    if lo >= -1 {
        return Ok(classify_first_order(a, k));
    }
    // Second-order pole: match the supported pattern, possibly after the
    // constant flip [[0,1],[1,0]].
    let pat = extract_second_order_pattern(a)?;
    let center = a.center().clone();
    let mut sys = a.clone();
    let mut total: Option<GaugeTransform> = None;
    if pat.flipped {
        let flip = GaugeTransform::constant(
            center.clone(),
            ExactMatrix::from_i64(&[&[0, 1], &[1, 0]]),
        )?;
        sys = gauge_transform(&sys, &flip)?;
        total = Some(flip);
    }
    let reducing = GaugeTransform::diag_monomials(center, &[-1, 0]);
    let reduced = gauge_transform(&sys, &reducing)?;
    debug_assert!(reduced.lowest_order() >= -1, "pattern gauge must reduce the pole");
    let total = match total {
        Some(t) => t.compose(&reducing)?,
        None => reducing,
    };
    let report = classify_first_order(&reduced, k);
    Ok(pull_back_witness(report, &total))
}

/// Default truncation budget: greatest integer eigenvalue + n + 5.
pub fn default_truncation(a: &LaurentMatrixFunction) -> i64 {
    if a.lowest_order() < -1 {
        // Budget for the reduced first-order system; eigenvalues there are
        // 0 and 1, so a small constant over the dimension suffices.
        return a.dim() as i64 + 6;
    }
    let (ints, _) = integer_eigenvalues(&a.residue());
    let m = ints.last().map(|&(v, _)| v).unwrap_or(0);
    m + a.dim() as i64 + 5
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::num::GaussianRational as G;

    fn series(lo: i64, mats: Vec<ExactMatrix>, exact: bool) -> LaurentMatrixFunction {
        LaurentMatrixFunction::new(G::zero(), lo, mats, exact)
    }

    #[test]
    fn non_integer_rejected() {
        let m = ExactMatrix::from_rows(vec![
            vec![G::frac(1, 2), G::zero()],
            vec![G::zero(), G::zero()],
        ]);
        let a = series(-1, vec![m], true);
        let rep = strong_regularity_classify(&a, 6).unwrap();
        assert_eq!(rep.verdict, Verdict::NotStrongRegular);
        assert_eq!(rep.reason, Some(Reason::NonIntegerEigenvalue));
    }

    #[test]
    fn scalar_pole_certified() {
        let a = series(-1, vec![ExactMatrix::from_i64(&[&[-1, 0], &[0, -1]])], true);
        let rep = strong_regularity_classify(&a, 6).unwrap();
        assert_eq!(rep.verdict, Verdict::StrongRegular);
        let wit = rep.witness.unwrap();
        assert_eq!(wit.w.leading, -1);
        assert_eq!(wit.w_inv.leading, 1);
    }

    #[test]
    fn second_order_pattern_strong_regular() {
        // A = [[0, -u^{-2}],[0, 0]] = W' W^{-1} for W = [[1, 1/u],[0, 1]].
        let mut c = ExactMatrix::zeros(2, 2);
        c[(0, 1)] = G::from_i64(-1);
        let a = series(-2, vec![c], true);
        let rep = strong_regularity_classify(&a, 8).unwrap();
        assert_eq!(rep.verdict, Verdict::StrongRegular);
        // Witness solves W' = A W.
        let wit = rep.witness.unwrap();
        let ws = wit.w.as_series(&G::zero());
        assert!(ws.derivative().agrees_with(&a.mul(&ws)));
    }

    #[test]
    fn second_order_resonance_violation() {
        // gamma_{-2}=1, alpha_0=0, beta_0=0, gamma_{-1}=1 violates the
        // solvability condition: not strong regular.
        let mut cm2 = ExactMatrix::zeros(2, 2);
        cm2[(0, 1)] = G::one();
        let mut cm1 = ExactMatrix::zeros(2, 2);
        cm1[(0, 1)] = G::one();
        let a = series(-2, vec![cm2, cm1], true);
        let rep = strong_regularity_classify(&a, 8).unwrap();
        assert_eq!(rep.verdict, Verdict::NotStrongRegular);
        assert_eq!(rep.reason, Some(Reason::RecurrenceInfeasible));
    }

    #[test]
    fn second_order_condition_satisfied() {
        // gamma_{-2}=1, alpha_0=2, beta_0=1, gamma_{-1}=1: condition holds.
        let mut cm2 = ExactMatrix::zeros(2, 2);
        cm2[(0, 1)] = G::one();
        let mut cm1 = ExactMatrix::zeros(2, 2);
        cm1[(0, 1)] = G::one();
        let c0 = ExactMatrix::from_i64(&[&[2, 0], &[0, 1]]);
        let a = series(-2, vec![cm2, cm1, c0], true);
        let rep = strong_regularity_classify(&a, 8).unwrap();
        assert_eq!(rep.verdict, Verdict::StrongRegular);
        let wit = rep.witness.unwrap();
        let ws = wit.w.as_series(&G::zero());
        assert!(ws.derivative().agrees_with(&a.mul(&ws)));
        let prod = ws.mul(&wit.w_inv.as_series(&G::zero()));
        let id = LaurentMatrixFunction::new(G::zero(), 0, vec![ExactMatrix::identity(2)], true);
        assert!(prod.agrees_with(&id));
    }

    #[test]
    fn deep_pole_rejected() {
        let mut c = ExactMatrix::zeros(2, 2);
        c[(0, 1)] = G::one();
        let a = series(-3, vec![c], true);
        assert!(matches!(
            strong_regularity_classify(&a, 6),
            Err(ClassifyError::UnsupportedPoleOrder(-3))
        ));
    }
}
