//! Coefficient recurrences for Laurent-series solutions at a first-order pole.
//!
//! For dW/dx = A(x)W with A = a_{-1}/u + a_0 + a_1 u + ... the coefficients of
//! a solution W = sum_{k>=m} b_k u^k satisfy
//! [(k+1)I - a_{-1}] b_{k+1} = sum_{j+l=k, j>=0} a_j b_l,
//! so the solution space is cut out by exact linear algebra on the chain
//! b_m, ..., b_M (M the greatest integer eigenvalue of the residue matrix) and
//! extended uniquely beyond M where the left-hand matrix is invertible.

use super::laurent::LaurentMatrixFunction;
use crate::exact::mat::{solve_possibly_singular, LinearSolution};
use crate::exact::num::GaussianRational;
use crate::exact::spectrum::integer_eigenvalues;
use crate::exact::ExactMatrix;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RecurrenceError {
    #[error("residue matrix has no integer eigenvalue, so no Laurent solution exists")]
    NoIntegerEigenvalue,
    #[error("Laurent solution space has dimension {dim} < {need}: no fundamental family")]
    Infeasible { dim: usize, need: usize },
    #[error("series truncation too short: need coefficients through order {need}, have {have}")]
    TruncationTooShort { need: i64, have: i64 },
    #[error("recurrence requires a pole of order at most one (lowest order >= -1)")]
    WrongPoleOrder,
}

/// Truncated matrix Laurent series housing a family of solutions.
///
/// For the forward system W' = AW the first `rank` columns are a basis of the
/// solutions with leading exponent exactly `leading`; for the inverse system
/// Y' = -YA the first `rank` rows are. The remaining columns/rows are zero.
#[derive(Clone, Debug)]
pub struct LaurentSolution {
    /// Leading exponent m of this family.
    pub leading: i64,
    /// Coefficients from `leading` upward.
    pub coeffs: Vec<ExactMatrix>,
    /// Number of independent solutions housed.
    pub rank: usize,
    /// Human-readable description of the residual freedom.
    pub free_params: String,
}

impl LaurentSolution {
    pub fn order_window(&self) -> (i64, i64) {
        (self.leading, self.leading + self.coeffs.len() as i64 - 1)
    }

    pub fn as_series(&self, center: &GaussianRational) -> LaurentMatrixFunction {
        LaurentMatrixFunction::new(center.clone(), self.leading, self.coeffs.clone(), false)
    }
}

/// One vector-valued Laurent solution as a coefficient table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct VectorSeries {
    pub lo: i64,
    /// coeffs[k][i]: i-th component of the coefficient of u^{lo+k}.
    pub coeffs: Vec<Vec<GaussianRational>>,
}

impl VectorSeries {
    fn leading_exponent(&self) -> Option<i64> {
        self.coeffs
            .iter()
            .position(|c| c.iter().any(|x| !x.is_zero()))
            .map(|k| self.lo + k as i64)
    }
}

pub(crate) struct SolutionSpace {
    pub lo: i64,
    pub hi: i64,
    pub basis: Vec<VectorSeries>,
}

/// Compute a basis of all truncated Laurent vector solutions of w' = Aw
/// through order `k_hi`, exactly.
pub(crate) fn solution_space(
    a: &LaurentMatrixFunction,
    k_hi: i64,
) -> Result<SolutionSpace, RecurrenceError> {
    if a.lowest_order() < -1 {
        return Err(RecurrenceError::WrongPoleOrder);
    }
    let n = a.dim();
    let residue = a.residue();
    let (ints, _) = integer_eigenvalues(&residue);
    if ints.is_empty() {
        return Err(RecurrenceError::NoIntegerEigenvalue);
    }
    let m_min = ints.first().unwrap().0;
    let m_max = ints.last().unwrap().0;
    let k_hi = k_hi.max(m_max);
    // Coefficients a_j are needed for j = 0 .. k_hi - m_min - 1.
    if let Some(hu) = a.known_upper() {
        let need = k_hi - m_min - 1;
        if hu < need {
            return Err(RecurrenceError::TruncationTooShort { need, have: hu });
        }
    }
    let blocks = (m_max - m_min + 1) as usize;
    let dim = blocks * n;
    // Chain constraints for k+1 = m_min .. m_max as one homogeneous system.
    let mut sys = ExactMatrix::zeros(dim, dim);
    for r in 0..blocks {
        let kp1 = m_min + r as i64;
        // [(k+1)I - a_{-1}] on block column r.
        for i in 0..n {
            for j in 0..n {
                let mut v = -residue[(i, j)].clone();
                if i == j {
                    v += &GaussianRational::from_i64(kp1);
                }
                sys[(r * n + i, r * n + j)] = v;
            }
        }
        // -a_j on block column s = r-1-j.
        for s in 0..r {
            let j = (r - 1 - s) as i64;
            let aj = a.coeff(j).expect("budget checked above");
            for i in 0..n {
                for jj in 0..n {
                    sys[(r * n + i, s * n + jj)] = -aj[(i, jj)].clone();
                }
            }
        }
    }
    let null = sys.nullspace();
    if null.is_empty() {
        return Ok(SolutionSpace { lo: m_min, hi: k_hi, basis: vec![] });
    }
    // Extend each chain uniquely beyond m_max.
    let mut basis = Vec::new();
    for v in null {
        let mut coeffs: Vec<Vec<GaussianRational>> = (0..blocks)
            .map(|r| v[r * n..(r + 1) * n].to_vec())
            .collect();
        for kp1 in (m_max + 1)..=k_hi {
            let mut rhs = vec![GaussianRational::zero(); n];
            for (l, beta) in coeffs.iter().enumerate() {
                let j = kp1 - 1 - (m_min + l as i64);
                if j < 0 {
                    continue;
                }
                let aj = a.coeff(j).expect("budget checked above");
                let term = aj.mul_vec(beta);
                for i in 0..n {
                    rhs[i] += &term[i];
                }
            }
            let mut lhs = residue.scale(&GaussianRational::from_i64(-1));
            for i in 0..n {
                lhs[(i, i)] += &GaussianRational::from_i64(kp1);
            }
            let rhs_m = ExactMatrix::from_rows(rhs.into_iter().map(|x| vec![x]).collect());
            let next = match solve_possibly_singular(&lhs, &rhs_m) {
                LinearSolution::Solved { particular, nullspace } => {
                    debug_assert!(nullspace.is_empty(), "(k+1)I - a_{{-1}} must be invertible past M");
                    particular.column(0)
                }
                LinearSolution::Infeasible => unreachable!("invertible step"),
            };
            coeffs.push(next);
        }
        basis.push(VectorSeries { lo: m_min, coeffs });
    }
    // Echelon-adapt the basis so every element has a definite leading
    // exponent: run RREF on the stacked coefficient rows.
    let width = ((k_hi - m_min + 1) as usize) * n;
    let rows: Vec<Vec<GaussianRational>> = basis
        .iter()
        .map(|vs| {
            let mut row = Vec::with_capacity(width);
            for c in &vs.coeffs {
                row.extend(c.iter().cloned());
            }
            row
        })
        .collect();
    let stacked = ExactMatrix::from_rows(rows);
    let (rref, pivots, _) = stacked.rref();
    let mut adapted = Vec::new();
    for r in 0..pivots.len() {
        let mut coeffs: Vec<Vec<GaussianRational>> = Vec::new();
        for b in 0..(k_hi - m_min + 1) as usize {
            coeffs.push((0..n).map(|i| rref[(r, b * n + i)].clone()).collect());
        }
        adapted.push(VectorSeries { lo: m_min, coeffs });
    }
    Ok(SolutionSpace { lo: m_min, hi: k_hi, basis: adapted })
}

fn group_into_families(
    space: &SolutionSpace,
    n: usize,
    transpose: bool,
) -> Vec<LaurentSolution> {
    use std::collections::BTreeMap;
    let mut by_leading: BTreeMap<i64, Vec<&VectorSeries>> = BTreeMap::new();
    for vs in &space.basis {
        if let Some(m) = vs.leading_exponent() {
            by_leading.entry(m).or_default().push(vs);
        }
    }
    let mut out = Vec::new();
    for (m, members) in by_leading {
        let len = (space.hi - m + 1) as usize;
        let mut coeffs = vec![ExactMatrix::zeros(n, n); len];
        for (col, vs) in members.iter().enumerate() {
            for (k, c) in vs.coeffs.iter().enumerate() {
                let order = vs.lo + k as i64;
                if order < m {
                    continue;
                }
                let slot = (order - m) as usize;
                for i in 0..n {
                    if transpose {
                        coeffs[slot][(col, i)] = c[i].clone();
                    } else {
                        coeffs[slot][(i, col)] = c[i].clone();
                    }
                }
            }
        }
        let rank = members.len();
        out.push(LaurentSolution {
            leading: m,
            coeffs,
            rank,
            free_params: format!(
                "{rank}-dimensional family at leading exponent {m}; any constant invertible right factor"
            ),
        });
    }
    out
}

/// Forward recurrence: families of Laurent solutions of W' = AW through order
/// `k`. `Ok` means a full n-dimensional space of solutions exists (the columns
/// across all families assemble into a fundamental candidate); a smaller space
/// is reported as `Infeasible`.
pub fn forward_recurrence(
    a: &LaurentMatrixFunction,
    k: i64,
) -> Result<Vec<LaurentSolution>, RecurrenceError> {
    let n = a.dim();
    let space = solution_space(a, k)?;
    if space.basis.len() < n {
        return Err(RecurrenceError::Infeasible { dim: space.basis.len(), need: n });
    }
    debug_assert!(space.basis.len() == n, "solution space cannot exceed dimension n");
    Ok(group_into_families(&space, n, false))
}

/// Transposed-system view: Y' = -YA holds iff Z = Y^T solves Z' = (-A^T) Z.
pub(crate) fn transposed_system(a: &LaurentMatrixFunction) -> LaurentMatrixFunction {
    let lo = a.lowest_order();
    let coeffs = (lo..=a.stored_upper())
        .map(|k| -&a.coeff(k).unwrap().transpose())
        .collect();
    LaurentMatrixFunction::new(a.center().clone(), lo, coeffs, a.exact_tail())
}

/// Inverse recurrence: families of Laurent solutions of Y' = -YA through
/// order `k` (rows of the returned coefficient matrices are the solutions).
/// The leading exponent p of each family satisfies: -p is an eigenvalue of
/// the residue matrix of A.
pub fn inverse_recurrence(
    a: &LaurentMatrixFunction,
    k: i64,
) -> Result<Vec<LaurentSolution>, RecurrenceError> {
    let n = a.dim();
    let at = transposed_system(a);
    let space = solution_space(&at, k)?;
    if space.basis.len() < n {
        return Err(RecurrenceError::Infeasible { dim: space.basis.len(), need: n });
    }
    Ok(group_into_families(&space, n, true))
}

/// Substitution check: does S' = A S hold through every computable order?
pub fn satisfies_forward(a: &LaurentMatrixFunction, sol: &LaurentSolution) -> bool {
    let s = sol.as_series(a.center());
    s.derivative().agrees_with(&a.mul(&s))
}

/// Substitution check for the inverse system: S' = -S A.
pub fn satisfies_inverse(a: &LaurentMatrixFunction, sol: &LaurentSolution) -> bool {
    let s = sol.as_series(a.center());
    s.derivative()
        .agrees_with(&s.mul(a).scale(&GaussianRational::from_i64(-1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::num::GaussianRational as G;

    fn series(lo: i64, mats: Vec<ExactMatrix>, exact: bool) -> LaurentMatrixFunction {
        LaurentMatrixFunction::new(G::zero(), lo, mats, exact)
    }

    #[test]
    fn scalar_pole() {
        // A = -I/u: W = u^{-1} c, m = M = -1.
        let a = series(-1, vec![ExactMatrix::from_i64(&[&[-1, 0], &[0, -1]])], true);
        let fams = forward_recurrence(&a, 4).unwrap();
        assert_eq!(fams.len(), 1);
        let f = &fams[0];
        assert_eq!(f.leading, -1);
        assert_eq!(f.rank, 2);
        // all higher coefficients vanish
        for c in &f.coeffs[1..] {
            assert!(c.is_zero());
        }
        assert!(satisfies_forward(&a, f));
    }

    #[test]
    fn diag_two_exponents() {
        // a_{-1} = diag(-1, 0): leading exponents -1 and 0.
        let a = series(-1, vec![ExactMatrix::from_i64(&[&[-1, 0], &[0, 0]])], true);
        let fams = forward_recurrence(&a, 4).unwrap();
        let leads: Vec<i64> = fams.iter().map(|f| f.leading).collect();
        assert_eq!(leads, vec![-1, 0]);
        for f in &fams {
            assert!(satisfies_forward(&a, f));
        }
    }

    #[test]
    fn inverse_scalar_pole() {
        // A = -I/u: Y = u * c with p = 1.
        let a = series(-1, vec![ExactMatrix::from_i64(&[&[-1, 0], &[0, -1]])], true);
        let fams = inverse_recurrence(&a, 4).unwrap();
        assert_eq!(fams.len(), 1);
        assert_eq!(fams[0].leading, 1);
        assert!(satisfies_inverse(&a, &fams[0]));
    }

    #[test]
    fn inverse_diag() {
        // a_{-1} = diag(-1, 0): inverse-side exponents p in {0, 1}.
        let a = series(-1, vec![ExactMatrix::from_i64(&[&[-1, 0], &[0, 0]])], true);
        let fams = inverse_recurrence(&a, 4).unwrap();
        let leads: Vec<i64> = fams.iter().map(|f| f.leading).collect();
        assert_eq!(leads, vec![0, 1]);
        for f in &fams {
            assert!(satisfies_inverse(&a, f));
        }
    }

    #[test]
    fn no_integer_eigenvalue() {
        let half = ExactMatrix::from_rows(vec![
            vec![G::frac(1, 2), G::zero()],
            vec![G::zero(), G::frac(1, 3)],
        ]);
        let a = series(-1, vec![half], true);
        assert!(matches!(
            forward_recurrence(&a, 4),
            Err(RecurrenceError::NoIntegerEigenvalue)
        ));
    }

    #[test]
    fn katsnelson_volok_shape() {
        // a_{-1} = [[-1,0],[0,0]], a_0 = diag(alpha, beta): m = -1 family with
        // b_{-1} = a_{-1} c, b_0 = a_0 a_{-1} c.
        let am1 = ExactMatrix::from_i64(&[&[-1, 0], &[0, 0]]);
        let a0 = ExactMatrix::from_i64(&[&[5, 0], &[0, 7]]);
        let a = series(-1, vec![am1, a0], true);
        let fams = forward_recurrence(&a, 4).unwrap();
        assert_eq!(fams.len(), 2);
        for f in &fams {
            assert!(satisfies_forward(&a, f));
        }
        // The m=-1 family must have b_{-1} supported on the a_{-1} column space.
        let lead = &fams[0];
        assert_eq!(lead.leading, -1);
        assert_eq!(lead.rank, 1);
        assert!(lead.coeffs[0][(1, 0)].is_zero());
    }

    #[test]
    fn mixed_integer_rational_is_infeasible_to_span() {
        // a_{-1} = diag(1/2, 0): integer eigenvalue 0 gives a 1-dim space only.
        let m = ExactMatrix::from_rows(vec![
            vec![G::frac(1, 2), G::zero()],
            vec![G::zero(), G::zero()],
        ]);
        let a = series(-1, vec![m], true);
        match forward_recurrence(&a, 4) {
            Err(RecurrenceError::Infeasible { dim, need }) => {
                assert_eq!((dim, need), (1, 2));
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
