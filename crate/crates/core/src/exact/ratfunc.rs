//! Exact rational functions num/den over Q(i).

use super::num::GaussianRational;
use super::poly::Poly;
use super::spectrum::{coeff_scale, complex_roots, gaussian_rational_roots};
use num_complex::Complex64;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Ratio of polynomials, normalized: gcd removed, denominator monic.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut r = Self { num, den };
        r.normalize();
        r
    }

    pub fn from_poly(p: Poly) -> Self {
        Self { num: p, den: Poly::one() }
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn x() -> Self {
        Self::from_poly(Poly::x())
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = Poly::one();
            return;
        }
        let g = self.num.gcd(&self.den);
        if !g.is_constant() {
            self.num = self.num.div_exact(&g);
            self.den = self.den.div_exact(&g);
        }
        let lead = self.den.leading().unwrap().clone();
        if !lead.is_one() {
            let inv = lead.inv();
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero rational function");
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn derivative(&self) -> Self {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::new(n, &self.den * &self.den)
    }

    /// Exact evaluation; `None` at a pole.
    pub fn eval(&self, x: &GaussianRational) -> Option<GaussianRational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(&self.num.eval(x) / &d)
    }

    pub fn eval_c64(&self, x: Complex64) -> Complex64 {
        self.num.eval_c64(x) / self.den.eval_c64(x)
    }

    /// Substitute `x -> c*x` exactly.
    pub fn scale_arg(&self, c: &GaussianRational) -> Self {
        Self::new(self.num.scale_arg(c), self.den.scale_arg(c))
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self::new(self.num.scale(c), self.den.clone())
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        assert!(!rhs.is_zero());
        RationalFunction::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl std::fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

impl std::fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        std::fmt::Display::fmt(self, f)
    }
}

/// A located zero or pole.
#[derive(Clone, Debug)]
pub enum RootLocation {
    Exact(GaussianRational),
    /// Certified numerically: |p(root)| < 1e-12 * coefficient scale.
    Numeric(Complex64),
}

impl RootLocation {
    pub fn to_c64(&self) -> Complex64 {
        match self {
            RootLocation::Exact(g) => g.to_c64(),
            RootLocation::Numeric(z) => *z,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct RootsPoles {
    pub zeros: Vec<(RootLocation, usize)>,
    pub poles: Vec<(RootLocation, usize)>,
}

fn poly_roots_with_multiplicity(p: &Poly) -> Vec<(RootLocation, usize)> {
    let mut out = Vec::new();
    for (factor, mult) in p.squarefree_decomposition() {
        let (exact, rem) = gaussian_rational_roots(&factor);
        for (g, m) in exact {
            debug_assert_eq!(m, 1);
            out.push((RootLocation::Exact(g), mult));
        }
        if !rem.is_constant() {
            let scale = coeff_scale(&rem);
            for z in complex_roots(&rem) {
                let resid = rem.eval_c64(z).norm();
                assert!(
                    resid < 1e-12 * scale,
                    "numeric root failed certification: residual {resid:e}"
                );
                out.push((RootLocation::Numeric(z), mult));
            }
        }
    }
    out
}

/// Zeros and poles of a nonzero rational function, with multiplicities from
/// the square-free decomposition. Exact where factorable over Q(i), certified
/// numeric otherwise.
pub fn ratfunc_roots_poles(r: &RationalFunction) -> RootsPoles {
    assert!(!r.is_zero(), "roots/poles of the zero function");
    RootsPoles {
        zeros: poly_roots_with_multiplicity(r.num()),
        poles: poly_roots_with_multiplicity(r.den()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::num::GaussianRational as G;

    fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
        RationalFunction::new(Poly::from_i64(num), Poly::from_i64(den))
    }

    #[test]
    fn zeros_poles_simple() {
        // r = x/(x-1)
        let r = rf(&[0, 1], &[-1, 1]);
        let rp = ratfunc_roots_poles(&r);
        assert_eq!(rp.zeros.len(), 1);
        assert_eq!(rp.poles.len(), 1);
        match &rp.zeros[0] {
            (RootLocation::Exact(g), 1) => assert!(g.is_zero()),
            other => panic!("unexpected {other:?}"),
        }
        match &rp.poles[0] {
            (RootLocation::Exact(g), 1) => assert!(g.is_one()),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn constant_has_none() {
        let r = rf(&[1], &[1]);
        let rp = ratfunc_roots_poles(&r);
        assert!(rp.zeros.is_empty() && rp.poles.is_empty());
    }

    #[test]
    fn product_unions_roots() {
        let p = rf(&[0, 1], &[1]); // x
        let q = rf(&[-2, 1], &[3, 1]); // (x-2)/(x+3)
        let prod = &p * &q;
        let rp = ratfunc_roots_poles(&prod);
        let mut zeros: Vec<i64> = rp
            .zeros
            .iter()
            .map(|(l, _)| match l {
                RootLocation::Exact(g) => g.to_i64().unwrap(),
                _ => panic!(),
            })
            .collect();
        zeros.sort_unstable();
        assert_eq!(zeros, vec![0, 2]);
        assert_eq!(rp.poles.len(), 1);
    }

    #[test]
    fn multiplicity_from_squarefree() {
        // (x-1)^3 / x^2
        let num = &(&Poly::from_i64(&[-1, 1]) * &Poly::from_i64(&[-1, 1]))
            * &Poly::from_i64(&[-1, 1]);
        let r = RationalFunction::new(num, Poly::from_i64(&[0, 0, 1]));
        let rp = ratfunc_roots_poles(&r);
        assert_eq!(rp.zeros.len(), 1);
        assert_eq!(rp.zeros[0].1, 3);
        assert_eq!(rp.poles[0].1, 2);
    }

    #[test]
    fn normalization_canonical() {
        // 2x/2(x-1) == x/(x-1); monic denominator
        let a = RationalFunction::new(Poly::from_i64(&[0, 2]), Poly::from_i64(&[-2, 2]));
        let b = rf(&[0, 1], &[-1, 1]);
        assert_eq!(a, b);
        assert!(a.den().leading().unwrap().is_one());
        // derivative of x/(x-1) = -1/(x-1)^2
        let d = b.derivative();
        assert_eq!(d, rf(&[-1], &[1, -2, 1]));
        let _ = G::zero();
    }
}
