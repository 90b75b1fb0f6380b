//! Determinants and adjugates of small polynomial matrices.

use super::poly::Poly;

/// Fraction-free Bareiss determinant of a square matrix of polynomials.
/// Every division in the sweep is exact, which keeps intermediate degrees and
/// coefficient sizes under control.
pub fn poly_det_bareiss(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "square matrix required");
    if n == 0 {
        return Poly::one();
    }
    let mut a: Vec<Vec<Poly>> = m.to_vec();
    let mut prev = Poly::one();
    let mut sign_flip = false;
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Poly::zero();
            };
            a.swap(k, p);
            sign_flip = !sign_flip;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = t.div_exact(&prev);
            }
        }
        for i in k + 1..n {
            a[i][k] = Poly::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign_flip {
        -&det
    } else {
        det
    }
}

/// Determinant with one column replaced, as used by Cramer solves.
pub fn poly_det_with_column(m: &[Vec<Poly>], col: usize, replacement: &[Poly]) -> Poly {
    let n = m.len();
    assert_eq!(replacement.len(), n);
    let mut work = m.to_vec();
    for i in 0..n {
        work[i][col] = replacement[i].clone();
    }
    poly_det_bareiss(&work)
}

/// Adjugate via cofactor determinants; fine for the small sizes used here.
pub fn poly_adjugate(m: &[Vec<Poly>]) -> Vec<Vec<Poly>> {
    let n = m.len();
    if n == 1 {
        return vec![vec![Poly::one()]];
    }
    let minor = |r: usize, c: usize| -> Poly {
        let sub: Vec<Vec<Poly>> = (0..n)
            .filter(|&i| i != r)
            .map(|i| {
                (0..n)
                    .filter(|&j| j != c)
                    .map(|j| m[i][j].clone())
                    .collect()
            })
            .collect();
        poly_det_bareiss(&sub)
    };
    let mut adj = vec![vec![Poly::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let cof = minor(j, i);
            adj[i][j] = if (i + j) % 2 == 0 { cof } else { -&cof };
        }
    }
    adj
}
