//! Meromorphic coefficient functions r(x) for the canonical system
//! dW/dx = rho [[0, r^-2],[r^2, 0]] W, and the simple-root/zero-curvature
//! conditions that characterize strong regularity of all its singular points.

use crate::exact::num::GaussianRational;
use crate::exact::poly::Poly;
use crate::exact::ratfunc::{ratfunc_roots_poles, RationalFunction, RootLocation};
use crate::exact::ExactMatrix;
use crate::singular::LaurentMatrixFunction;
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpectralError {
    #[error("root or pole of multiplicity {0} > 1: condition set is defined for simple points only")]
    NonSimpleRoot(usize),
    #[error("declared {kind} at {at} fails verification: |value| = {value:e}")]
    DeclaredPointInvalid { kind: &'static str, at: f64, value: f64 },
    #[error("no series expansion available: {0}")]
    ExpansionUnavailable(String),
    #[error("callable handle declares poles but carries no reciprocal evaluations")]
    MissingReciprocal,
}

type RealFn = Box<dyn Fn(f64) -> f64 + Send + Sync>;

/// Function handle carrying value, first and second derivative evaluations,
/// with declared (verified) simple roots; the reciprocal pack serves the
/// pole-side conditions.
pub struct CallableHandle {
    pub f: [RealFn; 3],
    pub reciprocal: Option<[RealFn; 3]>,
    pub roots: Vec<f64>,
    pub poles: Vec<f64>,
}

/// A meromorphic function handle: exact rational representation, or callable
/// evaluations with declared singular data.
pub enum MeromorphicHandle {
    Rational(RationalFunction),
    Callable(CallableHandle),
}

impl MeromorphicHandle {
    pub fn rational(r: RationalFunction) -> Result<Self, SpectralError> {
        assert!(!r.is_zero(), "handle for the zero function");
        Ok(MeromorphicHandle::Rational(r))
    }

    /// Build a callable handle, verifying each declared root and pole:
    /// |r(x_k)| < 1e-10 * scale and |q(y_l)| < 1e-10 * scale.
    pub fn callable(handle: CallableHandle) -> Result<Self, SpectralError> {
        for &x in &handle.roots {
            let v = (handle.f[0])(x);
            let scale = 1.0 + (handle.f[1])(x).abs();
            if v.abs() >= 1e-10 * scale {
                return Err(SpectralError::DeclaredPointInvalid { kind: "root", at: x, value: v.abs() });
            }
        }
        if !handle.poles.is_empty() {
            let Some(recip) = &handle.reciprocal else {
                return Err(SpectralError::MissingReciprocal);
            };
            for &y in &handle.poles {
                let v = (recip[0])(y);
                let scale = 1.0 + (recip[1])(y).abs();
                if v.abs() >= 1e-10 * scale {
                    return Err(SpectralError::DeclaredPointInvalid { kind: "pole", at: y, value: v.abs() });
                }
            }
        }
        Ok(MeromorphicHandle::Callable(handle))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointKind {
    Root,
    Pole,
}

#[derive(Clone, Debug)]
pub struct PointDiagnostic {
    pub kind: PointKind,
    pub location: Complex64,
    pub first_derivative_nonzero: bool,
    pub second_derivative_magnitude: f64,
    pub ok: bool,
}

#[derive(Clone, Debug)]
pub struct ConditionReport {
    pub passes: bool,
    pub diagnostics: Vec<PointDiagnostic>,
}

/// For exact rational r = N/D with simple roots and poles the conditions
/// r'' = 0 at roots of N and (1/r)'' = 0 at roots of D reduce to the exact
/// divisibility tests N | (N''D - 2N'D') and D | (D''N - 2D'N').
fn rational_condition(r: &RationalFunction) -> Result<ConditionReport, SpectralError> {
    let n = r.num().clone();
    let d = r.den().clone();
    for p in [&n, &d] {
        if p.is_constant() {
            continue;
        }
        let g = p.gcd(&p.derivative());
        if let Some(deg) = g.degree() {
            if deg > 0 {
                return Err(SpectralError::NonSimpleRoot(deg + 1));
            }
        }
    }
    let root_combo = &(&n.derivative().derivative() * &d)
        - &(&n.derivative() * &d.derivative()).scale(&GaussianRational::from_i64(2));
    let pole_combo = &(&d.derivative().derivative() * &n)
        - &(&d.derivative() * &n.derivative()).scale(&GaussianRational::from_i64(2));
    let roots_pass = n.is_constant() || n.divides(&root_combo);
    let poles_pass = d.is_constant() || d.divides(&pole_combo);

    // Per-point diagnostics via located roots.
    let rp = ratfunc_roots_poles(r);
    let mut diagnostics = Vec::new();
    let dn = n.derivative();
    let dd = d.derivative();
    for (loc, mult) in &rp.zeros {
        if *mult > 1 {
            return Err(SpectralError::NonSimpleRoot(*mult));
        }
        let z = loc.to_c64();
        let fp = dn.eval_c64(z) / d.eval_c64(z);
        let second = root_combo.eval_c64(z) / d.eval_c64(z).powi(2);
        let point_ok = match loc {
            RootLocation::Exact(g) => {
                let exact_second = root_combo.eval(g);
                fp.norm() > 0.0 && exact_second.is_zero()
            }
            RootLocation::Numeric(_) => roots_pass,
        };
        diagnostics.push(PointDiagnostic {
            kind: PointKind::Root,
            location: z,
            first_derivative_nonzero: fp.norm() > 1e-14,
            second_derivative_magnitude: second.norm(),
            ok: point_ok,
        });
    }
    for (loc, mult) in &rp.poles {
        if *mult > 1 {
            return Err(SpectralError::NonSimpleRoot(*mult));
        }
        let z = loc.to_c64();
        let qp = dd.eval_c64(z) / n.eval_c64(z);
        let second = pole_combo.eval_c64(z) / n.eval_c64(z).powi(2);
        let point_ok = match loc {
            RootLocation::Exact(g) => {
                let exact_second = pole_combo.eval(g);
                qp.norm() > 0.0 && exact_second.is_zero()
            }
            RootLocation::Numeric(_) => poles_pass,
        };
        diagnostics.push(PointDiagnostic {
            kind: PointKind::Pole,
            location: z,
            first_derivative_nonzero: qp.norm() > 1e-14,
            second_derivative_magnitude: second.norm(),
            ok: point_ok,
        });
    }
    Ok(ConditionReport { passes: roots_pass && poles_pass, diagnostics })
}

fn callable_condition(h: &CallableHandle) -> Result<ConditionReport, SpectralError> {
    let mut diagnostics = Vec::new();
    let mut passes = true;
    let rel = 1e-9;
    let mut check = |kind: PointKind, x: f64, fns: &[RealFn; 3]| {
        let d1 = (fns[1])(x);
        let d2 = (fns[2])(x);
        let scale = 1.0 + d1.abs();
        let first_ok = d1.abs() > rel * scale;
        let second_ok = d2.abs() <= rel * scale;
        let ok = first_ok && second_ok;
        diagnostics.push(PointDiagnostic {
            kind,
            location: Complex64::new(x, 0.0),
            first_derivative_nonzero: first_ok,
            second_derivative_magnitude: d2.abs(),
            ok,
        });
        ok
    };
    for &x in &h.roots {
        passes &= check(PointKind::Root, x, &h.f);
    }
    if !h.poles.is_empty() {
        let Some(recip) = &h.reciprocal else {
            return Err(SpectralError::MissingReciprocal);
        };
        for &y in &h.poles {
            passes &= check(PointKind::Pole, y, recip);
        }
    }
    Ok(ConditionReport { passes, diagnostics })
}

/// Condition check at every declared root x_k and pole y_l of r:
/// r(x_k) = 0, r'(x_k) != 0, r''(x_k) = 0, and the same for 1/r at poles.
/// Exact for rational handles, tolerance 1e-9 relative for callables.
pub fn r_condition_check(r: &MeromorphicHandle) -> Result<ConditionReport, SpectralError> {
    match r {
        MeromorphicHandle::Rational(rf) => rational_condition(rf),
        MeromorphicHandle::Callable(h) => callable_condition(h),
    }
}

/// Laurent coefficients of P/Q at 0 for orders lo..=hi, where neither P nor Q
/// is zero. Returns (lo, coefficients).
fn series_of_ratio(p: &Poly, q: &Poly, hi: i64) -> (i64, Vec<GaussianRational>) {
    assert!(!p.is_zero() && !q.is_zero());
    let vp = p.coeffs().iter().position(|c| !c.is_zero()).unwrap();
    let vq = q.coeffs().iter().position(|c| !c.is_zero()).unwrap();
    let lo = vp as i64 - vq as i64;
    let len = (hi - lo + 1).max(0) as usize;
    // Reduced tails with nonzero constant terms.
    let pt: Vec<GaussianRational> = p.coeffs()[vp..].to_vec();
    let qt: Vec<GaussianRational> = q.coeffs()[vq..].to_vec();
    let q0_inv = qt[0].inv();
    let mut out = Vec::with_capacity(len);
    for k in 0..len {
        let mut acc = pt.get(k).cloned().unwrap_or_else(GaussianRational::zero);
        for j in 1..=k {
            if let Some(qj) = qt.get(j) {
                let t = qj * &out[k - j];
                acc -= &t;
            }
        }
        out.push(&acc * &q0_inv);
    }
    (lo, out)
}

fn is_monomial(p: &Poly) -> bool {
    match p.degree() {
        None => false,
        Some(d) => p.coeffs().iter().take(d).all(|c| c.is_zero()),
    }
}

/// Local expansion of the canonical coefficient matrix
/// A(x) = [[0, r^-2],[r^2, 0]] at a declared root or pole x0 of r, to the
/// given truncation budget. Only exact rational handles expand.
pub fn canonical_from_r(
    r: &MeromorphicHandle,
    x0: &GaussianRational,
    budget: i64,
) -> Result<LaurentMatrixFunction, SpectralError> {
    let MeromorphicHandle::Rational(rf) = r else {
        return Err(SpectralError::ExpansionUnavailable(
            "callable handles carry no series data".into(),
        ));
    };
    let n0 = rf.num().eval(x0);
    let d0 = rf.den().eval(x0);
    if !n0.is_zero() && !d0.is_zero() {
        return Err(SpectralError::ExpansionUnavailable(format!(
            "{x0} is neither a root nor a pole"
        )));
    }
    let ns = rf.num().shift(x0);
    let ds = rf.den().shift(x0);
    let n2 = &ns * &ns;
    let d2 = &ds * &ds;
    let exact = is_monomial(&ns) && is_monomial(&ds);
    let (lo_sq, sq) = series_of_ratio(&n2, &d2, budget);
    let (lo_inv, inv) = series_of_ratio(&d2, &n2, budget);
    let lo = lo_sq.min(lo_inv);
    let hi = if exact {
        (lo_sq + sq.len() as i64 - 1).max(lo_inv + inv.len() as i64 - 1)
    } else {
        budget
    };
    let mut coeffs = Vec::new();
    for k in lo..=hi {
        let mut m = ExactMatrix::zeros(2, 2);
        if k >= lo_inv {
            let idx = (k - lo_inv) as usize;
            if idx < inv.len() {
                m[(0, 1)] = inv[idx].clone();
            }
        }
        if k >= lo_sq {
            let idx = (k - lo_sq) as usize;
            if idx < sq.len() {
                m[(1, 0)] = sq[idx].clone();
            }
        }
        coeffs.push(m);
    }
    Ok(LaurentMatrixFunction::new(x0.clone(), lo, coeffs, exact))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::num::GaussianRational as G;
    use crate::exact::Poly;

    fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
        RationalFunction::new(Poly::from_i64(num), Poly::from_i64(den))
    }

    #[test]
    fn linear_passes() {
        let r = MeromorphicHandle::rational(rf(&[0, 1], &[1])).unwrap();
        let rep = r_condition_check(&r).unwrap();
        assert!(rep.passes);
        assert_eq!(rep.diagnostics.len(), 1);
    }

    #[test]
    fn moebius_fails_with_curvature() {
        // r = x/(x-1): r''(0) = -2 != 0.
        let r = MeromorphicHandle::rational(rf(&[0, 1], &[-1, 1])).unwrap();
        let rep = r_condition_check(&r).unwrap();
        assert!(!rep.passes);
        let root = rep
            .diagnostics
            .iter()
            .find(|d| d.kind == PointKind::Root)
            .unwrap();
        assert!((root.second_derivative_magnitude - 2.0).abs() < 1e-12);
        assert!(!root.ok);
    }

    #[test]
    fn power_has_non_simple_root() {
        let r = MeromorphicHandle::rational(rf(&[0, 0, 1], &[1])).unwrap();
        assert!(matches!(
            r_condition_check(&r),
            Err(SpectralError::NonSimpleRoot(2))
        ));
    }

    #[test]
    fn tangent_callable_passes() {
        let pi = std::f64::consts::PI;
        let roots: Vec<f64> = (-3..=3).map(|k| k as f64 * pi).collect();
        let poles: Vec<f64> = (-3..=3).map(|k| k as f64 * pi + pi / 2.0).collect();
        let h = CallableHandle {
            f: [
                Box::new(f64::tan),
                Box::new(|x: f64| 1.0 / x.cos().powi(2)),
                Box::new(|x: f64| 2.0 * x.tan() / x.cos().powi(2)),
            ],
            reciprocal: Some([
                Box::new(|x: f64| 1.0 / x.tan()),
                Box::new(|x: f64| -1.0 / x.sin().powi(2)),
                Box::new(|x: f64| 2.0 / (x.tan() * x.sin().powi(2))),
            ]),
            roots,
            poles,
        };
        let handle = MeromorphicHandle::callable(h).unwrap();
        let rep = r_condition_check(&handle).unwrap();
        assert!(rep.passes);
        assert_eq!(rep.diagnostics.len(), 14);
    }

    #[test]
    fn expansion_at_simple_root() {
        // r = x at 0: A = [[0, u^-2],[u^2, 0]] exactly.
        let r = MeromorphicHandle::rational(rf(&[0, 1], &[1])).unwrap();
        let a = canonical_from_r(&r, &G::zero(), 8).unwrap();
        assert!(a.exact_tail());
        assert_eq!(a.lowest_order(), -2);
        let m2 = a.coeff(-2).unwrap();
        assert!(m2[(0, 1)].is_one());
        let p2 = a.coeff(2).unwrap();
        assert!(p2[(1, 0)].is_one());
        for k in [-1i64, 0, 1] {
            assert!(a.coeff(k).unwrap().is_zero());
        }
    }

    #[test]
    fn expansion_requires_singular_center() {
        let r = MeromorphicHandle::rational(rf(&[1], &[1])).unwrap();
        assert!(matches!(
            canonical_from_r(&r, &G::zero(), 6),
            Err(SpectralError::ExpansionUnavailable(_))
        ));
        let r2 = MeromorphicHandle::rational(rf(&[0, 1], &[1])).unwrap();
        assert!(matches!(
            canonical_from_r(&r2, &G::one(), 6),
            Err(SpectralError::ExpansionUnavailable(_))
        ));
    }

    #[test]
    fn expansion_truncated_for_general_rational() {
        // r = x/(x-1) at 0: series truncated, not exact.
        let r = MeromorphicHandle::rational(rf(&[0, 1], &[-1, 1])).unwrap();
        let a = canonical_from_r(&r, &G::zero(), 5).unwrap();
        assert!(!a.exact_tail());
        assert_eq!(a.lowest_order(), -2);
        assert_eq!(a.known_upper(), Some(5));
        // r^2 = x^2/(x-1)^2 = x^2 (1 + 2x + 3x^2 + ...)
        let c3 = a.coeff(3).unwrap();
        assert_eq!(c3[(1, 0)], G::from_i64(2));
    }
}
