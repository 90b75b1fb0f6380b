//! Exact eigenvalue extraction for small matrices.
//!
//! Integer and Gaussian-rational eigenvalues are certified by exact
//! substitution into the characteristic polynomial; numeric root candidates
//! only ever *suggest* values, they never enter a result unverified. Whatever
//! cannot be expressed in Q(i) or as a real quadratic surd is reported, not
//! guessed.

use super::mat::ExactMatrix;
use super::num::{rat_i64, GaussianRational, Rat};
use super::poly::Poly;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpectrumError {
    #[error("matrix dimension {0} exceeds the exact-factorization bound 8")]
    DimensionTooLarge(usize),
    #[error("eigenvalues are not exactly representable (irreducible factor of degree {0})")]
    IrrationalSpectrum(usize),
}

/// An exactly represented eigenvalue.
#[derive(Clone, Debug, PartialEq)]
pub enum ExactEigenvalue {
    /// Element of Q(i).
    Gaussian(GaussianRational),
    /// `a + b*sqrt(d)` with rational a, b, d and d not a square (d < 0 allowed).
    Surd { a: Rat, b: Rat, d: Rat },
}

impl ExactEigenvalue {
    pub fn to_c64(&self) -> Complex64 {
        match self {
            ExactEigenvalue::Gaussian(g) => g.to_c64(),
            ExactEigenvalue::Surd { a, b, d } => {
                let af = a.to_f64().unwrap_or(f64::NAN);
                let bf = b.to_f64().unwrap_or(f64::NAN);
                let df = d.to_f64().unwrap_or(f64::NAN);
                if df >= 0.0 {
                    Complex64::new(af + bf * df.sqrt(), 0.0)
                } else {
                    Complex64::new(af, bf * (-df).sqrt())
                }
            }
        }
    }

    pub fn is_integer(&self) -> bool {
        matches!(self, ExactEigenvalue::Gaussian(g) if g.is_integer())
    }

    pub fn as_gaussian(&self) -> Option<&GaussianRational> {
        match self {
            ExactEigenvalue::Gaussian(g) => Some(g),
            _ => None,
        }
    }
}

impl std::fmt::Display for ExactEigenvalue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExactEigenvalue::Gaussian(g) => write!(f, "{g}"),
            ExactEigenvalue::Surd { a, b, d } => write!(f, "{a}+({b})*sqrt({d})"),
        }
    }
}

/// Spectrum of a matrix with every root certified exactly.
#[derive(Clone, Debug)]
pub struct SpectrumReport {
    pub eigenvalues: Vec<(ExactEigenvalue, usize)>,
    /// True iff the characteristic polynomial splits over Z with all roots integral.
    pub all_integer: bool,
}

/// Durand-Kerner simultaneous root iteration.
///
/// Roots at the origin are deflated exactly, and the variable is rescaled so
/// the root moduli are O(1); this keeps the iteration stable even when the
/// coefficients span dozens of orders of magnitude (high-degree exact
/// determinants do). The returned values are floating approximations the
/// caller must certify.
pub fn complex_roots(p: &Poly) -> Vec<Complex64> {
    if p.degree().map_or(true, |d| d == 0) {
        return vec![];
    }
    // Deflate roots at the origin.
    let val = p.coeffs().iter().position(|c| !c.is_zero()).unwrap();
    let mut out = vec![Complex64::new(0.0, 0.0); val];
    let reduced = Poly::new(p.coeffs()[val..].to_vec());
    if reduced.degree().map_or(true, |d| d == 0) {
        return out;
    }
    // Geometric balancing: substitute x = s z with s = (|c_0|/|c_d|)^{1/d}.
    let d = reduced.degree().unwrap();
    let c0 = reduced.coeff(0).to_c64().norm();
    let cd = reduced.leading().unwrap().to_c64().norm();
    let s = if c0 > 0.0 && cd > 0.0 && c0.is_finite() && cd.is_finite() {
        (c0 / cd).powf(1.0 / d as f64).clamp(1e-12, 1e12)
    } else {
        1.0
    };
    let mut scaled_coeffs = Vec::with_capacity(d + 1);
    let mut pw = 1.0f64;
    for k in 0..=d {
        scaled_coeffs.push(reduced.coeff(k).to_c64() * pw);
        pw *= s;
    }
    let maxc = scaled_coeffs.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
    for c in scaled_coeffs.iter_mut() {
        *c /= maxc;
    }
    for z in complex_roots_balanced(&scaled_coeffs) {
        out.push(z * s);
    }
    out
}

/// Durand-Kerner on pre-balanced f64 coefficients (ascending order).
fn complex_roots_balanced(coeffs: &[Complex64]) -> Vec<Complex64> {
    let deg = coeffs.len() - 1;
    let lead = coeffs[deg];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    let eval = |z: Complex64| {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in monic.iter().rev() {
            acc = acc * z + c;
        }
        acc
    };
    // Radius bound and non-symmetric start angles avoid stalls on symmetric
    // root patterns.
    let radius = 1.0
        + monic[..deg]
            .iter()
            .map(|c| c.norm())
            .fold(0.0f64, f64::max);
    let mut roots: Vec<Complex64> = (0..deg)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / (deg as f64) + 0.4;
            Complex64::from_polar(0.7 * radius, theta)
        })
        .collect();
    for _ in 0..600 {
        let mut delta_max = 0.0f64;
        for i in 0..deg {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..deg {
                if j != i {
                    denom *= roots[i] - roots[j];
                }
            }
            if denom.norm() == 0.0 {
                roots[i] += Complex64::new(1e-8, 1e-8);
                continue;
            }
            let step = eval(roots[i]) / denom;
            roots[i] -= step;
            delta_max = delta_max.max(step.norm());
        }
        if delta_max < 1e-300_f64.max(1e-16 * radius) {
            break;
        }
    }
    // A few Newton polish steps per root.
    let dmonic: Vec<Complex64> = (1..=deg)
        .map(|k| monic[k] * Complex64::new(k as f64, 0.0))
        .collect();
    let deval = |z: Complex64| {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in dmonic.iter().rev() {
            acc = acc * z + c;
        }
        acc
    };
    for r in roots.iter_mut() {
        for _ in 0..8 {
            let d = deval(*r);
            if d.norm() == 0.0 {
                break;
            }
            let step = eval(*r) / d;
            *r -= step;
            if step.norm() < 1e-16 * (1.0 + r.norm()) {
                break;
            }
        }
    }
    roots
}

/// Scale used to certify numeric roots: max coefficient magnitude.
pub fn coeff_scale(p: &Poly) -> f64 {
    p.coeffs().iter().map(|c| c.to_c64().norm()).fold(1.0f64, f64::max)
}

fn rat_from_f64(x: f64, max_den: i64) -> Option<Rat> {
    // Continued-fraction rounding with bounded denominator.
    if !x.is_finite() {
        return None;
    }
    let (mut p0, mut q0, mut p1, mut q1) = (1i128, 0i128, x.round() as i128, 1i128);
    let mut frac = x - x.round();
    for _ in 0..40 {
        if q1 > max_den as i128 {
            break;
        }
        let approx = p1 as f64 / q1 as f64;
        if (approx - x).abs() < 1e-12 * (1.0 + x.abs()) {
            return Some(Rat::new(BigInt::from(p1), BigInt::from(q1)));
        }
        if frac.abs() < 1e-15 {
            break;
        }
        let r = 1.0 / frac;
        let a = r.round();
        frac = r - a;
        let (np, nq) = (a as i128 * p1 + p0, a as i128 * q1 + q0);
        p0 = p1;
        q0 = q1;
        p1 = np;
        q1 = nq;
    }
    if q1 != 0 && q1 <= max_den as i128 {
        let cand = Rat::new(BigInt::from(p1), BigInt::from(q1));
        let approx = cand.to_f64()?;
        if (approx - x).abs() < 1e-9 * (1.0 + x.abs()) {
            return Some(cand);
        }
    }
    None
}

fn deflate_root(
    cand: GaussianRational,
    rem: &mut Poly,
    roots: &mut Vec<(GaussianRational, usize)>,
) -> bool {
    if !rem.eval(&cand).is_zero() {
        return false;
    }
    let lin = Poly::new(vec![-cand.clone(), GaussianRational::one()]);
    let mut mult = 0usize;
    while !rem.is_constant() {
        let (q, r) = rem.div_rem(&lin);
        if !r.is_zero() {
            break;
        }
        *rem = q;
        mult += 1;
    }
    roots.push((cand, mult));
    true
}

/// All Gaussian-rational roots of `p`, certified by exact substitution,
/// together with the fully deflated remaining factor.
pub fn gaussian_rational_roots(p: &Poly) -> (Vec<(GaussianRational, usize)>, Poly) {
    let mut roots: Vec<(GaussianRational, usize)> = Vec::new();
    let mut rem = p.clone();
    if rem.is_zero() || rem.is_constant() {
        return (roots, rem);
    }

    // Numeric candidates from the square-free part, rounded and verified.
    let sf = rem.squarefree_part();
    for z in complex_roots(&sf) {
        if rem.is_constant() {
            break;
        }
        let Some(re) = rat_from_f64(z.re, 1_000_000) else { continue };
        let Some(im) = rat_from_f64(z.im, 1_000_000) else { continue };
        let cand = GaussianRational::new(re, im);
        if roots.iter().any(|(r, _)| *r == cand) {
            continue;
        }
        deflate_root(cand, &mut rem, &mut roots);
    }

    // Exhaustive integer backstop within the Cauchy bound, so integer roots
    // can never be missed by numeric misconvergence.
    if !rem.is_constant() {
        let lead = rem.leading().unwrap().clone();
        let bound = rem
            .coeffs()
            .iter()
            .map(|c| (c / &lead).norm_sq().to_f64().unwrap_or(f64::INFINITY).sqrt())
            .fold(0.0f64, f64::max)
            + 1.0;
        if bound <= 20_000.0 {
            let b = bound.ceil() as i64;
            for k in -b..=b {
                if rem.is_constant() {
                    break;
                }
                let cand = GaussianRational::from_i64(k);
                if roots.iter().any(|(r, _)| *r == cand) {
                    continue;
                }
                deflate_root(cand, &mut rem, &mut roots);
            }
        }
    }
    (roots, rem)
}

/// Solve a quadratic with Q(i) coefficients exactly when possible.
fn quadratic_roots_exact(p: &Poly) -> Option<Vec<ExactEigenvalue>> {
    assert_eq!(p.degree(), Some(2));
    let a = p.coeff(2);
    let b = p.coeff(1);
    let c = p.coeff(0);
    let two = GaussianRational::from_i64(2);
    let four = GaussianRational::from_i64(4);
    let disc = &(&b * &b) - &(&four * &(&a * &c));
    let two_a = &two * &a;
    if let Some(s) = disc.sqrt_exact() {
        let r1 = &(&(-&b) + &s) / &two_a;
        let r2 = &(&(-&b) - &s) / &two_a;
        return Some(vec![
            ExactEigenvalue::Gaussian(r1),
            ExactEigenvalue::Gaussian(r2),
        ]);
    }
    // Real-rational discriminant: surd pair a0 +- b0 sqrt(d).
    if b.is_real() && a.is_real() && disc.is_real() {
        let a0 = (-&b / &two_a).re;
        let b0 = (GaussianRational::one() / &two_a).re;
        return Some(vec![
            ExactEigenvalue::Surd { a: a0.clone(), b: b0.clone(), d: disc.re.clone() },
            ExactEigenvalue::Surd { a: a0, b: -b0, d: disc.re },
        ]);
    }
    None
}

/// Try to split a rational quartic with no rational roots into two rational
/// quadratics via the resolvent cubic (Descartes' method).
fn quartic_rational_split(p: &Poly) -> Option<(Poly, Poly)> {
    if p.degree() != Some(4) || !p.is_real() {
        return None;
    }
    let m = p.monic();
    // Depressed quartic y^4 + py^2 + qy + r with x = y - a3/4.
    let a3 = m.coeff(3);
    let shift = &a3 / &GaussianRational::from_i64(-4);
    let dep = m.shift(&shift);
    let pc = dep.coeff(2).re.clone();
    let qc = dep.coeff(1).re.clone();
    let rc = dep.coeff(0).re.clone();
    // Resolvent: z^3 + 2p z^2 + (p^2 - 4r) z - q^2, z = u^2 of the split
    // y^4+py^2+qy+r = (y^2+uy+v)(y^2-uy+w).
    let two = rat_i64(2);
    let res = Poly::new(vec![
        GaussianRational::from_rat(-(&qc * &qc)),
        GaussianRational::from_rat(&pc * &pc - rat_i64(4) * &rc),
        GaussianRational::from_rat(&two * &pc),
        GaussianRational::one(),
    ]);
    let (rational_roots, _) = gaussian_rational_roots(&res);
    for (z, _) in rational_roots {
        if !z.is_real() || z.re.is_negative() {
            continue;
        }
        let Some(u) = super::num::rat_sqrt_exact(&z.re) else { continue };
        if u.is_zero() {
            // Biquadratic split y^4 + py^2 + r = (y^2+v)(y^2+w) with v, w the
            // roots of t^2 - pt + r.
            if !qc.is_zero() {
                continue;
            }
            let quad = Poly::new(vec![
                GaussianRational::from_rat(rc.clone()),
                GaussianRational::from_rat(-pc.clone()),
                GaussianRational::one(),
            ]);
            let (qr, rem) = gaussian_rational_roots(&quad);
            let total: usize = qr.iter().map(|(_, m)| m).sum();
            if total == 2 && rem.is_constant() {
                let mut parts = Vec::new();
                for (root, mult) in &qr {
                    for _ in 0..*mult {
                        parts.push(Poly::new(vec![
                            root.clone(),
                            GaussianRational::zero(),
                            GaussianRational::one(),
                        ]));
                    }
                }
                let back = -&shift;
                let g1 = parts[0].shift(&back);
                let g2 = parts[1].shift(&back);
                if (&g1 * &g2) == m {
                    return Some((g1, g2));
                }
            }
            continue;
        }
        // v + w = p + u^2, w - v = q/u.
        let quw = &qc / &u;
        let vpw = &pc + &z.re;
        let v = (&vpw - &quw) / &two;
        let w = (&vpw + &quw) / &two;
        let f1 = Poly::new(vec![
            GaussianRational::from_rat(v),
            GaussianRational::from_rat(u.clone()),
            GaussianRational::one(),
        ]);
        let f2 = Poly::new(vec![
            GaussianRational::from_rat(w),
            GaussianRational::from_rat(-u),
            GaussianRational::one(),
        ]);
        // Undo the depression shift.
        let back = -&shift;
        let g1 = f1.shift(&back);
        let g2 = f2.shift(&back);
        if (&g1 * &g2) == m {
            return Some((g1, g2));
        }
    }
    None
}

/// Exact factorization of a characteristic polynomial into certified
/// eigenvalues. Returns the eigenvalue list and the degree of any factor whose
/// roots could not be represented exactly (0 when fully resolved).
pub fn exact_poly_spectrum(p: &Poly) -> (Vec<(ExactEigenvalue, usize)>, usize) {
    let (gauss, rem) = gaussian_rational_roots(p);
    let mut out: Vec<(ExactEigenvalue, usize)> = gauss
        .into_iter()
        .map(|(g, m)| (ExactEigenvalue::Gaussian(g), m))
        .collect();
    if rem.is_constant() {
        return (out, 0);
    }
    // Remaining factor has no Q(i)-rational roots. Handle multiplicities via
    // the square-free decomposition.
    let mut unresolved = 0usize;
    for (factor, mult) in rem.squarefree_decomposition() {
        match factor.degree() {
            Some(2) => {
                if let Some(roots) = quadratic_roots_exact(&factor) {
                    for r in roots {
                        out.push((r, mult));
                    }
                } else {
                    unresolved += 2 * mult;
                }
            }
            Some(4) => {
                if let Some((f1, f2)) = quartic_rational_split(&factor) {
                    for f in [f1, f2] {
                        if let Some(roots) = quadratic_roots_exact(&f) {
                            for r in roots {
                                out.push((r, mult));
                            }
                        } else {
                            unresolved += 2 * mult;
                        }
                    }
                } else {
                    unresolved += 4 * mult;
                }
            }
            Some(d) => unresolved += d * mult,
            None => {}
        }
    }
    (out, unresolved)
}

/// Exact spectrum of a square matrix (n <= 8).
///
/// Every returned eigenvalue satisfies the characteristic polynomial exactly;
/// `all_integer` is decided exactly regardless of whether non-integer
/// eigenvalues are representable.
pub fn integer_spectrum(a: &ExactMatrix) -> Result<SpectrumReport, SpectrumError> {
    assert!(a.is_square(), "integer_spectrum needs a square matrix");
    let n = a.nrows();
    if n > 8 {
        return Err(SpectrumError::DimensionTooLarge(n));
    }
    let cp = a.char_poly();
    let (eigs, unresolved) = exact_poly_spectrum(&cp);
    let total: usize = eigs.iter().map(|(_, m)| m).sum();
    let all_integer = unresolved == 0
        && total == n
        && eigs.iter().all(|(e, _)| e.is_integer());
    if unresolved > 0 {
        return Err(SpectrumError::IrrationalSpectrum(unresolved));
    }
    Ok(SpectrumReport { eigenvalues: eigs, all_integer })
}

/// Integer eigenvalues of `a` with multiplicities, plus the degree of the
/// deflated non-integer remainder. Exact and total: integer roots are found by
/// certified deflation with an exhaustive bounded scan, so a nonzero remainder
/// degree proves a non-integer eigenvalue exists.
pub fn integer_eigenvalues(a: &ExactMatrix) -> (Vec<(i64, usize)>, usize) {
    let cp = a.char_poly();
    let (roots, rem) = gaussian_rational_roots(&cp);
    let mut ints = Vec::new();
    let mut non_integer_degree = rem.degree().unwrap_or(0);
    for (g, m) in roots {
        match g.to_i64() {
            Some(k) => ints.push((k, m)),
            None => non_integer_degree += m,
        }
    }
    ints.sort_unstable();
    (ints, non_integer_degree)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diag_spectrum() {
        let a = ExactMatrix::from_i64(&[&[-1, 0], &[0, 0]]);
        let rep = integer_spectrum(&a).unwrap();
        assert!(rep.all_integer);
        let mut eig: Vec<(i64, usize)> = rep
            .eigenvalues
            .iter()
            .map(|(e, m)| (e.as_gaussian().unwrap().to_i64().unwrap(), *m))
            .collect();
        eig.sort_unstable();
        assert_eq!(eig, vec![(-1, 1), (0, 1)]);
    }

    #[test]
    fn rotation_spectrum_is_gaussian() {
        let a = ExactMatrix::from_i64(&[&[0, 1], &[-1, 0]]);
        let rep = integer_spectrum(&a).unwrap();
        assert!(!rep.all_integer);
        let mut vals: Vec<GaussianRational> = rep
            .eigenvalues
            .iter()
            .map(|(e, _)| e.as_gaussian().unwrap().clone())
            .collect();
        vals.sort_by_key(|v| v.im.clone());
        assert_eq!(vals, vec![-GaussianRational::i(), GaussianRational::i()]);
    }

    #[test]
    fn surd_spectrum() {
        // x^2 - 2 eigenvalues +-sqrt(2)
        let a = ExactMatrix::from_i64(&[&[0, 2], &[1, 0]]);
        let rep = integer_spectrum(&a).unwrap();
        assert!(!rep.all_integer);
        assert!(matches!(rep.eigenvalues[0].0, ExactEigenvalue::Surd { .. }));
        for (e, _) in &rep.eigenvalues {
            let z = e.to_c64();
            assert!((z.re.abs() - 2f64.sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn multiplicities_sum_to_n() {
        let a = ExactMatrix::from_i64(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, 3]]);
        let rep = integer_spectrum(&a).unwrap();
        let total: usize = rep.eigenvalues.iter().map(|(_, m)| m).sum();
        assert_eq!(total, 3);
        assert!(rep.all_integer);
        // substitution check
        let cp = a.char_poly();
        for (e, _) in &rep.eigenvalues {
            assert!(cp.eval(e.as_gaussian().unwrap()).is_zero());
        }
    }

    #[test]
    fn integer_eigs_with_rational_rest() {
        let a = ExactMatrix::from_rows(vec![
            vec![GaussianRational::frac(1, 2), GaussianRational::zero()],
            vec![GaussianRational::zero(), GaussianRational::from_i64(3)],
        ]);
        let (ints, rest) = integer_eigenvalues(&a);
        assert_eq!(ints, vec![(3, 1)]);
        assert_eq!(rest, 1);
    }

    #[test]
    fn quartic_split() {
        // (x^2-2)(x^2-3) has no rational roots; splits into rational quadratics.
        let f = &Poly::from_i64(&[-2, 0, 1]) * &Poly::from_i64(&[-3, 0, 1]);
        let (eigs, unresolved) = exact_poly_spectrum(&f);
        assert_eq!(unresolved, 0);
        assert_eq!(eigs.len(), 4);
        let mut vals: Vec<f64> = eigs.iter().map(|(e, _)| e.to_c64().re).collect();
        vals.sort_by(f64::total_cmp);
        let expect = [-(3f64.sqrt()), -(2f64.sqrt()), 2f64.sqrt(), 3f64.sqrt()];
        for (v, e) in vals.iter().zip(expect) {
            assert!((v - e).abs() < 1e-12);
        }
    }
}
