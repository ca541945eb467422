//! Per-manifold block algebra.
//!
//! Total-excitation truncation makes every phase operator block diagonal:
//! the N-manifold carries an (N+1)x(N+1) block. Identity checks and
//! operator functions run blockwise, which turns otherwise cubic-in-dimension
//! matrix work into sums of small dense operations; Frobenius norms add in
//! quadrature across blocks, and for exactly block-diagonal operators the
//! blockwise Frobenius norm is the full-matrix norm (an upper bound on the
//! spectral norm).

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{FockError, OperatorMatrix, TruncatedSpace};

/// A block-diagonal operator stored one total-excitation manifold at a time:
/// `blocks[n]` is the (n+1)x(n+1) block acting on the N = n manifold.
#[derive(Debug, Clone, PartialEq)]
pub struct ManifoldBlocks {
    blocks: Vec<DMatrix<Complex64>>,
}

impl ManifoldBlocks {
    pub fn new(blocks: Vec<DMatrix<Complex64>>) -> Self {
        for (n, b) in blocks.iter().enumerate() {
            assert_eq!(b.nrows(), n + 1, "manifold {n} block has wrong size");
            assert_eq!(b.ncols(), n + 1, "manifold {n} block has wrong size");
        }
        Self { blocks }
    }

    pub fn n_max(&self) -> usize {
        self.blocks.len() - 1
    }

    pub fn blocks(&self) -> &[DMatrix<Complex64>] {
        &self.blocks
    }

    /// Extract the manifold blocks of a dense operator, reporting the
    /// Frobenius norm of everything outside the blocks. Manifold-preserving
    /// operators return exactly zero there.
    pub fn from_operator(
        op: &OperatorMatrix,
        space: &TruncatedSpace,
    ) -> Result<(Self, f64), FockError> {
        if op.dim() != space.dim() {
            return Err(FockError::DimensionMismatch {
                left: op.dim(),
                right: space.dim(),
            });
        }
        let m = op.matrix();
        let mut blocks = Vec::with_capacity(space.n_max() + 1);
        for n in 0..=space.n_max() {
            let offset = space.manifold_offset(n);
            blocks.push(m.view((offset, offset), (n + 1, n + 1)).into_owned());
        }
        // Accumulate the off-block mass from the off-block entries alone:
        // subtracting block sums from the total would cancel catastrophically
        // and report rounding debris for exactly block-diagonal operators.
        let mut off_sq = 0.0;
        for (col, st) in space.states().iter().enumerate() {
            let offset = space.manifold_offset(st.total());
            let end = offset + st.total() + 1;
            for (row, z) in m.column(col).iter().enumerate() {
                if row < offset || row >= end {
                    off_sq += z.norm_sqr();
                }
            }
        }
        Ok((Self::new(blocks), off_sq.sqrt()))
    }

    /// Materialize as a dense operator.
    pub fn to_operator(
        &self,
        space: &TruncatedSpace,
        label: impl Into<String>,
        hermitian: bool,
        unitary: bool,
    ) -> OperatorMatrix {
        assert_eq!(self.n_max(), space.n_max());
        let dim = space.dim();
        let mut m = DMatrix::from_element(dim, dim, Complex64::new(0.0, 0.0));
        for (n, block) in self.blocks.iter().enumerate() {
            let offset = space.manifold_offset(n);
            m.view_mut((offset, offset), (n + 1, n + 1))
                .copy_from(block);
        }
        OperatorMatrix::new(label, m, hermitian, unitary)
    }

    pub fn adjoint(&self) -> Self {
        Self::new(self.blocks.iter().map(|b| b.adjoint()).collect())
    }

    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.n_max(), other.n_max());
        Self::new(
            self.blocks
                .iter()
                .zip(other.blocks.iter())
                .map(|(a, b)| a * b)
                .collect(),
        )
    }

    pub fn square(&self) -> Self {
        self.compose(self)
    }

    pub fn frobenius_distance(&self, other: &Self) -> f64 {
        assert_eq!(self.n_max(), other.n_max());
        self.blocks
            .iter()
            .zip(other.blocks.iter())
            .map(|(a, b)| (a - b).iter().map(|z| z.norm_sqr()).sum::<f64>())
            .sum::<f64>()
            .sqrt()
    }

    /// ||A^H A - I||_F accumulated across blocks.
    pub fn unitarity_residual(&self) -> f64 {
        self.blocks
            .iter()
            .map(|b| {
                let mut g = b.adjoint() * b;
                for k in 0..g.nrows() {
                    g[(k, k)] -= Complex64::new(1.0, 0.0);
                }
                g.iter().map(|z| z.norm_sqr()).sum::<f64>()
            })
            .sum::<f64>()
            .sqrt()
    }

    /// ||A - A^H||_F accumulated across blocks.
    pub fn hermiticity_residual(&self) -> f64 {
        self.blocks
            .iter()
            .map(|b| (b - b.adjoint()).iter().map(|z| z.norm_sqr()).sum::<f64>())
            .sum::<f64>()
            .sqrt()
    }

    /// exp(i A) computed blockwise by scaling-and-squaring with a Taylor
    /// core. Deliberately shares no machinery with the eigenbasis
    /// construction so it can serve as an independent check on operator
    /// functions defined through eigenphases.
    pub fn exp_i(&self) -> Self {
        Self::new(self.blocks.iter().map(exp_taylor_scaled).collect())
    }
}

fn exp_taylor_scaled(block: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let i = Complex64::new(0.0, 1.0);
    let a = block.map(|z| i * z);
    let norm = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as u32
    } else {
        0
    };
    let scaled = a.map(|z| z / 2.0f64.powi(squarings as i32));

    let n = block.nrows();
    let mut result = DMatrix::identity(n, n);
    let mut term: DMatrix<Complex64> = DMatrix::identity(n, n);
    for k in 1..=40 {
        term = (&term * &scaled).map(|z| z / k as f64);
        result += &term;
        let tail = term.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if tail < 1e-20 {
            break;
        }
    }
    for _ in 0..squarings {
        result = &result * &result;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn exp_of_pauli_like_block_matches_closed_form() {
        // exp(i t sigma_x) = cos t I + i sin t sigma_x.
        let t = 0.7;
        let block =
            DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(t, 0.0), c(t, 0.0), c(0.0, 0.0)]);
        let blocks = ManifoldBlocks::new(vec![DMatrix::from_element(1, 1, c(0.3, 0.0)), block]);
        let e = blocks.exp_i();
        let b1 = &e.blocks()[1];
        assert!((b1[(0, 0)] - c(t.cos(), 0.0)).norm() < 1e-14);
        assert!((b1[(0, 1)] - c(0.0, t.sin())).norm() < 1e-14);
        let b0 = &e.blocks()[0];
        assert!((b0[(0, 0)] - Complex64::from_polar(1.0, 0.3)).norm() < 1e-14);
    }

    #[test]
    fn exp_handles_large_scaling() {
        // A block with norm well above the scaling threshold.
        let block = DMatrix::from_element(1, 1, c(50.0, 0.0));
        let e = ManifoldBlocks::new(vec![block]).exp_i();
        assert!((e.blocks()[0][(0, 0)] - Complex64::from_polar(1.0, 50.0)).norm() < 1e-12);
    }
}
