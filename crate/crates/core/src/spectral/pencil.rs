//! Systems with a spectral parameter: P(x) + rho Q(x).

use crate::exact::num::GaussianRational;
use crate::exact::poly::Poly;
use crate::exact::spectrum::{exact_poly_spectrum, ExactEigenvalue};
use crate::exact::ExactMatrix;
use crate::singular::LaurentMatrixFunction;

/// Pencil of Laurent coefficient data: the system matrix is
/// P(x) + rho Q(x) with both factors expanded at the same center.
#[derive(Clone, Debug)]
pub struct MatrixPencil {
    pub p: LaurentMatrixFunction,
    pub q: LaurentMatrixFunction,
}

impl MatrixPencil {
    pub fn new(p: LaurentMatrixFunction, q: LaurentMatrixFunction) -> Self {
        assert_eq!(p.dim(), q.dim(), "pencil parts must share dimension");
        assert_eq!(p.center(), q.center(), "pencil parts must share the center");
        Self { p, q }
    }

    pub fn dim(&self) -> usize {
        self.p.dim()
    }

    /// Residue pair (p_{-1}, q_{-1}).
    pub fn residues(&self) -> (ExactMatrix, ExactMatrix) {
        (self.p.residue(), self.q.residue())
    }

    /// The system matrix at a fixed parameter value.
    pub fn at(&self, rho: &GaussianRational) -> LaurentMatrixFunction {
        self.p.add(&self.q.scale(rho))
    }
}

/// Characteristic polynomial of `p + rho*q` in the eigenvalue variable, with
/// coefficients that are exact polynomials in rho (Faddeev-LeVerrier over
/// Q(i)[rho]).
pub fn charpoly_in_rho(p: &ExactMatrix, q: &ExactMatrix) -> Vec<Poly> {
    assert!(p.is_square() && q.is_square());
    let n = p.nrows();
    assert_eq!(n, q.nrows());
    // Entries of p + rho q as degree-<=1 polynomials in rho.
    let a: Vec<Vec<Poly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| Poly::new(vec![p[(i, j)].clone(), q[(i, j)].clone()]))
                .collect()
        })
        .collect();
    let mut m: Vec<Vec<Poly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Poly::one() } else { Poly::zero() })
                .collect()
        })
        .collect();
    let mut coeffs = vec![Poly::zero(); n + 1];
    coeffs[n] = Poly::one();
    for k in 1..=n {
        // m = a * m
        let mut next = vec![vec![Poly::zero(); n]; n];
        for i in 0..n {
            for l in 0..n {
                if a[i][l].is_zero() {
                    continue;
                }
                for j in 0..n {
                    let t = &a[i][l] * &m[l][j];
                    next[i][j] = &next[i][j] + &t;
                }
            }
        }
        m = next;
        let mut tr = Poly::zero();
        for i in 0..n {
            tr = &tr + &m[i][i];
        }
        let c = (-&tr).scale(&GaussianRational::from_i64(k as i64).inv());
        coeffs[n - k] = c.clone();
        for i in 0..n {
            m[i][i] = &m[i][i] + &c;
        }
    }
    coeffs
}

/// Spectrum report for the residue pencil.
#[derive(Clone, Debug)]
pub struct PencilSpectrumReport {
    /// True iff the eigenvalues of p_{-1} + rho q_{-1} are integer and
    /// independent of rho.
    pub integer_and_constant: bool,
    /// Whether every characteristic coefficient is free of rho (decided
    /// symbolically, exactly).
    pub rho_free: bool,
    /// Exact spectrum when rho-free and exactly representable.
    pub eigenvalues: Vec<(ExactEigenvalue, usize)>,
    /// Spectra at the sampled parameter values (by exact substitution),
    /// recorded for cross-checking.
    pub sample_spectra: Vec<Vec<(i64, usize)>>,
}

/// Decide whether the residue pencil has integer, parameter-independent
/// eigenvalues. The decision is exact via the symbolic characteristic
/// polynomial; the samples (at least 3) provide an independent cross-check.
pub fn pencil_integer_check(
    pencil: &MatrixPencil,
    rho_samples: &[GaussianRational],
) -> PencilSpectrumReport {
    assert!(rho_samples.len() >= 3, "need at least three parameter samples");
    let (pm1, qm1) = pencil.residues();
    let coeffs = charpoly_in_rho(&pm1, &qm1);
    let rho_free = coeffs.iter().all(|c| c.is_constant());

    let mut eigenvalues = Vec::new();
    let mut integer_and_constant = false;
    if rho_free {
        let cp = Poly::new(coeffs.iter().map(|c| c.coeff(0)).collect());
        let (eigs, unresolved) = exact_poly_spectrum(&cp);
        let all_integer = unresolved == 0 && eigs.iter().all(|(e, _)| e.is_integer());
        eigenvalues = eigs;
        integer_and_constant = all_integer;
    }

    let mut sample_spectra = Vec::new();
    for rho in rho_samples {
        let m = &pm1 + &qm1.scale(rho);
        let (ints, _) = crate::exact::spectrum::integer_eigenvalues(&m);
        sample_spectra.push(ints);
    }
    PencilSpectrumReport { integer_and_constant, rho_free, eigenvalues, sample_spectra }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::num::GaussianRational as G;

    fn samples() -> Vec<G> {
        vec![G::from_i64(1), G::i(), G::complex_i64(2, -3)]
    }

    fn residue_only(m: ExactMatrix) -> LaurentMatrixFunction {
        LaurentMatrixFunction::new(G::zero(), -1, vec![m], true)
    }

    #[test]
    fn triangular_pencil_is_constant() {
        // p = [[l1, G1],[0, l2]], q = [[0, G2],[0, 0]]: spectrum {l1, l2}.
        let p = ExactMatrix::from_i64(&[&[3, 7], &[0, -2]]);
        let q = ExactMatrix::from_i64(&[&[0, 11], &[0, 0]]);
        let pencil = MatrixPencil::new(residue_only(p), residue_only(q));
        let rep = pencil_integer_check(&pencil, &samples());
        assert!(rep.rho_free);
        assert!(rep.integer_and_constant);
        let mut eig: Vec<i64> = rep
            .eigenvalues
            .iter()
            .map(|(e, _)| e.as_gaussian().unwrap().to_i64().unwrap())
            .collect();
        eig.sort_unstable();
        assert_eq!(eig, vec![-2, 3]);
        for s in &rep.sample_spectra {
            assert_eq!(s, &vec![(-2, 1), (3, 1)]);
        }
    }

    #[test]
    fn zero_q_reduces_to_matrix_spectrum() {
        let p = ExactMatrix::from_i64(&[&[1, 5], &[0, 0]]);
        let q = ExactMatrix::zeros(2, 2);
        let pencil = MatrixPencil::new(residue_only(p), residue_only(q));
        let rep = pencil_integer_check(&pencil, &samples());
        assert!(rep.integer_and_constant);
    }

    #[test]
    fn symmetric_q_depends_on_rho() {
        // p = 0, q = [[0,1],[1,0]]: eigenvalues +-rho.
        let p = ExactMatrix::zeros(2, 2);
        let q = ExactMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        // char poly lambda^2 - rho^2: the constant coefficient is -rho^2.
        let coeffs = charpoly_in_rho(&p, &q);
        assert_eq!(coeffs[0], Poly::from_i64(&[0, 0, -1]));
        assert_eq!(coeffs[1], Poly::zero());
        let pencil = MatrixPencil::new(residue_only(p), residue_only(q));
        let rep = pencil_integer_check(&pencil, &samples());
        assert!(!rep.rho_free);
        assert!(!rep.integer_and_constant);
    }

    #[test]
    fn conjugation_invariance() {
        let p = ExactMatrix::from_i64(&[&[1, 2], &[0, 4]]);
        let q = ExactMatrix::from_i64(&[&[0, 3], &[0, 0]]);
        let t = ExactMatrix::from_i64(&[&[2, 1], &[3, 2]]); // det 1
        let t_inv = t.inverse().unwrap();
        let pc = &(&t_inv * &p) * &t;
        let qc = &(&t_inv * &q) * &t;
        let a = pencil_integer_check(
            &MatrixPencil::new(residue_only(p), residue_only(q)),
            &samples(),
        );
        let b = pencil_integer_check(
            &MatrixPencil::new(residue_only(pc), residue_only(qc)),
            &samples(),
        );
        assert_eq!(a.integer_and_constant, b.integer_and_constant);
        assert_eq!(a.rho_free, b.rho_free);
        assert_eq!(a.sample_spectra, b.sample_spectra);
    }
}
