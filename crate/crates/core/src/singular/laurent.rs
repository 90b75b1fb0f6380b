//! Truncated matrix Laurent series and gauge transformations.

use crate::exact::num::GaussianRational;
use crate::exact::poly::Poly;
use crate::exact::polymat::{poly_adjugate, poly_det_bareiss};
use crate::exact::ExactMatrix;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GaugeError {
    #[error("gauge determinant is not a nonzero monomial, so det F vanishes off the center")]
    DeterminantNotMonomial,
    #[error("truncation too short to determine any coefficient of the result")]
    TruncationTooShort,
    #[error("dimension mismatch between system and gauge")]
    DimensionMismatch,
}

/// Truncated Laurent expansion of an n-by-n matrix function at a center x0.
///
/// `coeffs[k]` is the coefficient of `(x - x0)^(lowest + k)`. When
/// `exact_tail` is set the entries beyond the stored window are exactly zero
/// (the function is a matrix Laurent polynomial); otherwise they are unknown
/// and the stored window is the whole truncation budget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentMatrixFunction {
    center: GaussianRational,
    lowest: i64,
    coeffs: Vec<ExactMatrix>,
    exact_tail: bool,
    dim: usize,
}

impl LaurentMatrixFunction {
    pub fn new(
        center: GaussianRational,
        lowest: i64,
        coeffs: Vec<ExactMatrix>,
        exact_tail: bool,
    ) -> Self {
        let dim = coeffs.first().map_or(0, |m| m.nrows());
        assert!(
            coeffs.iter().all(|m| m.nrows() == dim && m.ncols() == dim),
            "coefficients must be square matrices of equal dimension"
        );
        let mut out = Self { center, lowest, coeffs, exact_tail, dim };
        out.trim();
        out
    }

    /// Zero function with a known window `lo..=hi`.
    pub fn zero_window(center: GaussianRational, dim: usize, lo: i64, hi: i64, exact_tail: bool) -> Self {
        let len = (hi - lo + 1).max(0) as usize;
        Self {
            center,
            lowest: lo,
            coeffs: vec![ExactMatrix::zeros(dim, dim); len],
            exact_tail,
            dim,
        }
    }

    fn trim(&mut self) {
        // Leading exactly-zero coefficients shift the lowest order up.
        while self.coeffs.first().map_or(false, |m| m.is_zero()) {
            self.coeffs.remove(0);
            self.lowest += 1;
        }
        // Trailing zeros are only redundant when the tail is exact.
        if self.exact_tail {
            while self.coeffs.last().map_or(false, |m| m.is_zero()) {
                self.coeffs.pop();
            }
        }
    }

    pub fn center(&self) -> &GaussianRational {
        &self.center
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn lowest_order(&self) -> i64 {
        self.lowest
    }

    pub fn exact_tail(&self) -> bool {
        self.exact_tail
    }

    /// Highest order with a known coefficient; `None` means all orders known.
    pub fn known_upper(&self) -> Option<i64> {
        if self.exact_tail {
            None
        } else {
            Some(self.lowest + self.coeffs.len() as i64 - 1)
        }
    }

    /// Highest order with a stored coefficient (exact functions are zero
    /// beyond this).
    pub fn stored_upper(&self) -> i64 {
        self.lowest + self.coeffs.len() as i64 - 1
    }

    /// Coefficient of `(x-x0)^k`; `None` when outside the truncation budget.
    pub fn coeff(&self, k: i64) -> Option<ExactMatrix> {
        if k < self.lowest {
            return Some(ExactMatrix::zeros(self.dim, self.dim));
        }
        let idx = (k - self.lowest) as usize;
        if idx < self.coeffs.len() {
            Some(self.coeffs[idx].clone())
        } else if self.exact_tail {
            Some(ExactMatrix::zeros(self.dim, self.dim))
        } else {
            None
        }
    }

    /// Residue coefficient a_{-1}.
    pub fn residue(&self) -> ExactMatrix {
        self.coeff(-1)
            .expect("residue lies below the known window only if lowest > -1")
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|m| m.is_zero())
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, m)| m.scale(&GaussianRational::from_i64(self.lowest + i as i64)))
            .collect();
        // d/dx sum a_k u^k = sum k a_k u^{k-1}; an unknown tail stays unknown
        // at the shifted orders.
        Self::new(self.center.clone(), self.lowest - 1, coeffs, self.exact_tail)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self {
            center: self.center.clone(),
            lowest: self.lowest,
            coeffs: self.coeffs.iter().map(|m| m.scale(c)).collect(),
            exact_tail: self.exact_tail,
            dim: self.dim,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        assert_eq!(self.center, other.center);
        let lo = self.lowest.min(other.lowest);
        let hi = match (self.known_upper(), other.known_upper()) {
            (None, None) => None,
            (Some(a), None) => Some(a),
            (None, Some(b)) => Some(b),
            (Some(a), Some(b)) => Some(a.min(b)),
        };
        let hi_store = hi.unwrap_or_else(|| {
            (self.lowest + self.coeffs.len() as i64 - 1)
                .max(other.lowest + other.coeffs.len() as i64 - 1)
                .max(lo - 1)
        });
        let mut coeffs = Vec::new();
        for k in lo..=hi_store {
            let a = self.coeff(k).unwrap_or_else(|| ExactMatrix::zeros(self.dim, self.dim));
            let b = other.coeff(k).unwrap_or_else(|| ExactMatrix::zeros(self.dim, self.dim));
            coeffs.push(&a + &b);
        }
        Self::new(self.center.clone(), lo, coeffs, hi.is_none())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&GaussianRational::from_i64(-1)))
    }

    /// Series product with truncation bookkeeping: the result window is the
    /// largest range of orders fully determined by the known windows.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        assert_eq!(self.center, other.center);
        let lo = self.lowest + other.lowest;
        let hi = match (self.known_upper(), other.known_upper()) {
            (None, None) => None,
            (Some(ha), None) => Some(ha + other.lowest),
            (None, Some(hb)) => Some(hb + self.lowest),
            (Some(ha), Some(hb)) => Some((ha + other.lowest).min(hb + self.lowest)),
        };
        let hi_store = hi.unwrap_or(
            self.lowest + self.coeffs.len() as i64 + other.lowest + other.coeffs.len() as i64,
        );
        let mut coeffs = Vec::new();
        for k in lo..=hi_store {
            let mut acc = ExactMatrix::zeros(self.dim, self.dim);
            let i_lo = self.lowest.max(k - (other.lowest + other.coeffs.len() as i64 - 1));
            let i_hi = (self.lowest + self.coeffs.len() as i64 - 1).min(k - other.lowest);
            for i in i_lo..=i_hi {
                let a = &self.coeffs[(i - self.lowest) as usize];
                let b = &other.coeffs[((k - i) - other.lowest) as usize];
                acc = &acc + &(a * b);
            }
            coeffs.push(acc);
        }
        Self::new(self.center.clone(), lo, coeffs, hi.is_none())
    }

    /// Truncate the known window to at most order `hi` (marking the tail
    /// unknown), used to keep recurrence budgets explicit.
    pub fn truncated(&self, hi: i64) -> Self {
        let len = ((hi - self.lowest + 1).max(0) as usize).min(self.coeffs.len());
        let mut coeffs: Vec<ExactMatrix> = self.coeffs[..len].to_vec();
        let target_len = (hi - self.lowest + 1).max(0) as usize;
        if self.exact_tail {
            while coeffs.len() < target_len {
                coeffs.push(ExactMatrix::zeros(self.dim, self.dim));
            }
        }
        Self::new(self.center.clone(), self.lowest, coeffs, false)
    }

    /// Entry (i, j) as a scalar Laurent polynomial in u = x - x0, available
    /// only for exact-tail functions.
    pub fn entry_poly(&self, i: usize, j: usize) -> (i64, Poly) {
        assert!(self.exact_tail, "entry_poly needs an exact Laurent polynomial");
        let coeffs = self.coeffs.iter().map(|m| m[(i, j)].clone()).collect();
        (self.lowest, Poly::new(coeffs))
    }

    /// Equality through every order both windows determine.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let lo = self.lowest.min(other.lowest);
        let hi = match (self.known_upper(), other.known_upper()) {
            (None, None) => {
                let a = self.lowest + self.coeffs.len() as i64;
                let b = other.lowest + other.coeffs.len() as i64;
                a.max(b)
            }
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (Some(a), Some(b)) => a.min(b),
        };
        for k in lo..=hi {
            match (self.coeff(k), other.coeff(k)) {
                (Some(a), Some(b)) if a == b => {}
                (None, _) | (_, None) => {}
                _ => return false,
            }
        }
        true
    }
}

/// Gauge transformation W = F(x) Y with F a matrix Laurent polynomial whose
/// determinant is a nonzero monomial (so F is invertible off the center).
#[derive(Clone, Debug)]
pub struct GaugeTransform {
    f: LaurentMatrixFunction,
    f_inv: LaurentMatrixFunction,
}

impl GaugeTransform {
    pub fn new(f: LaurentMatrixFunction) -> Result<Self, GaugeError> {
        if !f.exact_tail() {
            return Err(GaugeError::TruncationTooShort);
        }
        let n = f.dim();
        let lo = f.lowest_order();
        // Shift to a polynomial matrix P with F = u^lo * P.
        let pmat: Vec<Vec<Poly>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let col: Vec<GaussianRational> =
                            f.coeffs.iter().map(|m| m[(i, j)].clone()).collect();
                        Poly::new(col)
                    })
                    .collect()
            })
            .collect();
        let det = poly_det_bareiss(&pmat);
        // det F = u^{n*lo} det P must be c * u^nu.
        let Some(deg) = det.degree() else {
            return Err(GaugeError::DeterminantNotMonomial);
        };
        let mono_ok = det.coeffs().iter().take(deg).all(|c| c.is_zero());
        if !mono_ok {
            return Err(GaugeError::DeterminantNotMonomial);
        }
        let c = det.leading().unwrap().clone();
        let adj = poly_adjugate(&pmat);
        // F^-1 = adj(P) * u^{lo(n-1)} * u^{-n lo - deg} / c
        //      = adj(P) * u^{-lo - deg} / c.
        let shift = -lo - deg as i64;
        let max_deg = adj
            .iter()
            .flatten()
            .filter_map(|p| p.degree())
            .max()
            .unwrap_or(0);
        let cinv = c.inv();
        let coeffs: Vec<ExactMatrix> = (0..=max_deg)
            .map(|k| {
                ExactMatrix::from_fn(n, n, |i, j| &adj[i][j].coeff(k) * &cinv)
            })
            .collect();
        let f_inv = LaurentMatrixFunction::new(f.center().clone(), shift, coeffs, true);
        Ok(Self { f, f_inv })
    }

    pub fn identity(center: GaussianRational, n: usize) -> Self {
        let f = LaurentMatrixFunction::new(center, 0, vec![ExactMatrix::identity(n)], true);
        Self::new(f).expect("identity gauge is always valid")
    }

    pub fn constant(center: GaussianRational, m: ExactMatrix) -> Result<Self, GaugeError> {
        let f = LaurentMatrixFunction::new(center, 0, vec![m], true);
        Self::new(f)
    }

    /// Diagonal monomial gauge diag(u^{k_1}, ..., u^{k_n}).
    pub fn diag_monomials(center: GaussianRational, exponents: &[i64]) -> Self {
        let n = exponents.len();
        let lo = *exponents.iter().min().unwrap();
        let hi = *exponents.iter().max().unwrap();
        let mut coeffs = vec![ExactMatrix::zeros(n, n); (hi - lo + 1) as usize];
        for (i, &k) in exponents.iter().enumerate() {
            coeffs[(k - lo) as usize][(i, i)] = GaussianRational::one();
        }
        let f = LaurentMatrixFunction::new(center, lo, coeffs, true);
        Self::new(f).expect("diagonal monomial gauge is always valid")
    }

    pub fn matrix(&self) -> &LaurentMatrixFunction {
        &self.f
    }

    pub fn inverse_matrix(&self) -> &LaurentMatrixFunction {
        &self.f_inv
    }

    /// Compose gauges: (self then rhs) corresponds to F_self * F_rhs.
    pub fn compose(&self, rhs: &GaugeTransform) -> Result<Self, GaugeError> {
        Self::new(self.f.mul(&rhs.f))
    }
}

/// Transform the system dW/dx = A(x) W under W = F Y:
/// B = F^-1 A F - F^-1 dF/dx.
pub fn gauge_transform(
    a: &LaurentMatrixFunction,
    f: &GaugeTransform,
) -> Result<LaurentMatrixFunction, GaugeError> {
    if a.dim() != f.matrix().dim() {
        return Err(GaugeError::DimensionMismatch);
    }
    let finv = f.inverse_matrix();
    let conj = finv.mul(&a.mul(f.matrix()));
    let drift = finv.mul(&f.matrix().derivative());
    let b = conj.sub(&drift);
    if b.coeffs.is_empty() && !b.exact_tail {
        return Err(GaugeError::TruncationTooShort);
    }
    Ok(b)
}
