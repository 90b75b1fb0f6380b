//! Exact Jordan decomposition over Q(i).

use super::mat::ExactMatrix;
use super::num::GaussianRational;
use super::spectrum::{gaussian_rational_roots, SpectrumError};

/// Jordan decomposition `transform^-1 * a * transform = J` with `J` block
/// diagonal, each block `lambda*I + H` with `H` the superdiagonal shift.
#[derive(Clone, Debug)]
pub struct JordanForm {
    pub transform: ExactMatrix,
    pub transform_inv: ExactMatrix,
    /// `(eigenvalue, block size)` in the order the blocks appear.
    pub blocks: Vec<(GaussianRational, usize)>,
}

impl JordanForm {
    /// Assemble the block-diagonal Jordan matrix.
    pub fn jordan_matrix(&self) -> ExactMatrix {
        let n: usize = self.blocks.iter().map(|(_, s)| s).sum();
        let mut j = ExactMatrix::zeros(n, n);
        let mut at = 0usize;
        for (lambda, size) in &self.blocks {
            for k in 0..*size {
                j[(at + k, at + k)] = lambda.clone();
                if k + 1 < *size {
                    j[(at + k, at + k + 1)] = GaussianRational::one();
                }
            }
            at += size;
        }
        j
    }
}

fn mat_pow(a: &ExactMatrix, k: usize) -> ExactMatrix {
    let mut out = ExactMatrix::identity(a.nrows());
    for _ in 0..k {
        out = &out * a;
    }
    out
}

/// Rank bookkeeping for picking vectors independent of a running span.
struct SpanTracker {
    rows: ExactMatrix,
    rank: usize,
    dim: usize,
}

impl SpanTracker {
    fn new(dim: usize) -> Self {
        Self { rows: ExactMatrix::zeros(0, dim), rank: 0, dim }
    }

    /// Add `v` if it enlarges the span; reports whether it did.
    fn try_add(&mut self, v: &[GaussianRational]) -> bool {
        let mut rows: Vec<Vec<GaussianRational>> = (0..self.rows.nrows())
            .map(|i| (0..self.dim).map(|j| self.rows[(i, j)].clone()).collect())
            .collect();
        rows.push(v.to_vec());
        let cand = ExactMatrix::from_rows(rows);
        if cand.rank() > self.rank {
            self.rank += 1;
            self.rows = cand;
            true
        } else {
            false
        }
    }
}

/// Jordan decomposition of `a`, requiring every eigenvalue to lie in Q(i).
///
/// `target_last`, when given, forces all blocks of that eigenvalue to the end
/// of the block list (the position the shearing step peels from); everything
/// else keeps a deterministic sorted order.
pub fn jordan_decomposition_ordered(
    a: &ExactMatrix,
    target_last: Option<&GaussianRational>,
) -> Result<JordanForm, SpectrumError> {
    assert!(a.is_square(), "jordan decomposition needs a square matrix");
    let n = a.nrows();
    if n > 8 {
        return Err(SpectrumError::DimensionTooLarge(n));
    }
    let cp = a.char_poly();
    let (roots, rem) = gaussian_rational_roots(&cp);
    if !rem.is_constant() {
        return Err(SpectrumError::IrrationalSpectrum(rem.degree().unwrap_or(0)));
    }
    // Deterministic eigenvalue order: by (re, im), target last.
    let mut eigs = roots;
    eigs.sort_by(|(x, _), (y, _)| x.re.cmp(&y.re).then(x.im.cmp(&y.im)));
    if let Some(t) = target_last {
        if let Some(pos) = eigs.iter().position(|(e, _)| e == t) {
            let item = eigs.remove(pos);
            eigs.push(item);
        }
    }

    let mut columns: Vec<Vec<GaussianRational>> = Vec::with_capacity(n);
    let mut blocks: Vec<(GaussianRational, usize)> = Vec::new();
    for (lambda, alg_mult) in &eigs {
        let shifted = a - &ExactMatrix::diagonal(&vec![lambda.clone(); n]);
        // Kernel filtration K_j = ker(B^j) up to the algebraic multiplicity.
        let mut kernels: Vec<Vec<Vec<GaussianRational>>> = vec![vec![]];
        let mut height = 0usize;
        for j in 1..=*alg_mult {
            let k = mat_pow(&shifted, j).nullspace();
            let done = k.len() == *alg_mult;
            kernels.push(k);
            height = j;
            if done {
                break;
            }
        }
        // Chain tops, tallest first. At level j a new top must be independent
        // of K_{j-1} together with the level-j images of taller chains.
        let mut tops: Vec<(Vec<GaussianRational>, usize)> = Vec::new();
        for j in (1..=height).rev() {
            let mut tracker = SpanTracker::new(n);
            for v in &kernels[j - 1] {
                tracker.try_add(v);
            }
            for (top, h) in &tops {
                if *h > j {
                    let img = mat_pow(&shifted, h - j).mul_vec(top);
                    tracker.try_add(&img);
                }
            }
            for v in &kernels[j] {
                if tracker.try_add(v) {
                    tops.push((v.clone(), j));
                }
            }
        }
        // Chains bottom-up: B^{h-1}t, ..., Bt, t so B acts as the upper shift.
        for (top, h) in &tops {
            for k in (0..*h).rev() {
                columns.push(mat_pow(&shifted, k).mul_vec(top));
            }
            blocks.push((lambda.clone(), *h));
        }
    }
    let mut t = ExactMatrix::zeros(n, n);
    for (j, col) in columns.iter().enumerate() {
        t.set_column(j, col);
    }
    let t_inv = t
        .inverse()
        .expect("jordan chain vectors must form a basis");
    Ok(JordanForm { transform: t, transform_inv: t_inv, blocks })
}

/// Jordan decomposition with the default deterministic block order.
pub fn jordan_decomposition(a: &ExactMatrix) -> Result<JordanForm, SpectrumError> {
    jordan_decomposition_ordered(a, None)
}
