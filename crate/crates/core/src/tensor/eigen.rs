//! Hermitian eigensolvers.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::tensor::operator::{ComplexOperator, C64};

const MAX_SWEEPS_PER_DIM: usize = 1000;

/// Eigenvalues in ascending order with matching orthonormal eigenvectors
/// stored column-wise.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: ComplexOperator,
}

impl EigenDecomposition {
    /// `V Λ V†`.
    pub fn recompose(&self) -> ComplexOperator {
        let n = self.values.len();
        let mut out = ComplexOperator::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = C64::new(0.0, 0.0);
                for (k, &lambda) in self.values.iter().enumerate() {
                    acc += self.vectors[(i, k)] * lambda * self.vectors[(j, k)].conj();
                }
                out[(i, j)] = acc;
            }
        }
        out
    }
}

fn to_nalgebra(op: &ComplexOperator) -> DMatrix<C64> {
    let n = op.dim();
    DMatrix::from_fn(n, n, |i, j| op[(i, j)])
}

fn solve(m: DMatrix<C64>) -> Result<SymmetricEigen<C64, nalgebra::Dyn>> {
    let dim = m.nrows();
    SymmetricEigen::try_new(m, f64::EPSILON, MAX_SWEEPS_PER_DIM * dim.max(1))
        .ok_or(Error::NoConvergence { dim })
}

/// Full eigendecomposition of a Hermitian operator. The input is symmetrized
/// as `(M + M†)/2` first.
pub fn eig_hermitian(op: &ComplexOperator) -> Result<EigenDecomposition> {
    let n = op.dim();
    if !op.is_finite() {
        return Err(Error::arg("eigensolver input contains NaN or Inf"));
    }
    let eig = solve(to_nalgebra(&op.symmetrized()))?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let mut vectors = ComplexOperator::zeros(n);
    for (col, &k) in order.iter().enumerate() {
        for row in 0..n {
            vectors[(row, col)] = eig.eigenvectors[(row, k)];
        }
    }
    Ok(EigenDecomposition { values, vectors })
}

/// Ascending eigenvalues of a Hermitian operator.
///
/// The operator is split into the connected components of its sparsity graph
/// (`i ~ j` when entry `(i, j)` or `(j, i)` is nonzero) and each block is solved
/// on its own. The union of the block spectra is exactly the full spectrum.
pub fn spectrum(op: &ComplexOperator) -> Result<Vec<f64>> {
    if !op.is_finite() {
        return Err(Error::arg("eigensolver input contains NaN or Inf"));
    }
    let h = op.symmetrized();
    let n = h.dim();
    let zero = C64::new(0.0, 0.0);

    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for i in 0..n {
        for (j, z) in h.row(i).iter().enumerate().skip(i + 1) {
            if *z != zero {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut block_of = vec![usize::MAX; n];
    for i in 0..n {
        let root = find(&mut parent, i);
        if block_of[root] == usize::MAX {
            block_of[root] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[block_of[root]].push(i);
    }

    let mut values = Vec::with_capacity(n);
    for block in &blocks {
        match block.len() {
            1 => values.push(h[(block[0], block[0])].re),
            k => {
                let m = DMatrix::from_fn(k, k, |a, b| h[(block[a], block[b])]);
                values.extend(solve(m)?.eigenvalues.iter().copied());
            }
        }
    }
    values.sort_by(f64::total_cmp);
    Ok(values)
}
