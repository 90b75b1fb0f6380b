//! Cross-checks between the r(x) condition set and the strong-regularity
//! classifier on the canonical system, at sampled spectral parameters.

use merostat_core::exact::num::GaussianRational as G;
use merostat_core::exact::{Poly, RationalFunction};
use merostat_core::singular::{default_truncation, strong_regularity_classify, Verdict};
use merostat_core::spectral::{canonical_from_r, r_condition_check, MeromorphicHandle};

fn rho_samples() -> Vec<G> {
    vec![G::from_i64(1), G::i(), G::complex_i64(2, -3)]
}

fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
    RationalFunction::new(Poly::from_i64(num), Poly::from_i64(den))
}

/// classify(rho * A) at one center, for every sample rho; all verdicts must agree.
fn classify_at(r: &MeromorphicHandle, x0: &G) -> Verdict {
    let a = canonical_from_r(r, x0, 14).expect("expansion");
    let mut verdict = None;
    for rho in rho_samples() {
        let sys = a.scale(&rho);
        let k = default_truncation(&sys);
        let rep = strong_regularity_classify(&sys, k).expect("classify");
        match verdict {
            None => verdict = Some(rep.verdict),
            Some(v) => assert_eq!(v, rep.verdict, "verdict differs across rho samples"),
        }
    }
    verdict.unwrap()
}

#[test]
fn linear_r_strong_regular_at_origin() {
    let r = MeromorphicHandle::rational(rf(&[0, 1], &[1])).unwrap();
    assert!(r_condition_check(&r).unwrap().passes);
    assert_eq!(classify_at(&r, &G::zero()), Verdict::StrongRegular);
}

#[test]
fn moebius_r_rejected_at_both_points() {
    // r = x/(x-1): fails the curvature condition, so some center must reject.
    let r = MeromorphicHandle::rational(rf(&[0, 1], &[-1, 1])).unwrap();
    assert!(!r_condition_check(&r).unwrap().passes);
    assert_eq!(classify_at(&r, &G::zero()), Verdict::NotStrongRegular);
    assert_eq!(classify_at(&r, &G::one()), Verdict::NotStrongRegular);
}
