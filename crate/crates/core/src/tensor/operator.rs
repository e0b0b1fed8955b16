use std::ops::{Index, IndexMut};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::tolerance;

pub type C64 = Complex<f64>;

/// Dense square complex matrix stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexOperator {
    dim: usize,
    data: Vec<C64>,
}

impl ComplexOperator {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![C64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut op = Self::zeros(dim);
        for i in 0..dim {
            op[(i, i)] = C64::new(1.0, 0.0);
        }
        op
    }

    /// Builds an operator from row-major entries. `data.len()` must be a square.
    pub fn from_vec(dim: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::arg(format!(
                "expected {} entries for a {dim}x{dim} operator, got {}",
                dim * dim,
                data.len()
            )));
        }
        Ok(Self { dim, data })
    }

    pub fn from_real(dim: usize, data: &[f64]) -> Result<Self> {
        Self::from_vec(dim, data.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn from_diagonal(diag: &[C64]) -> Self {
        let mut op = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            op[(i, i)] = d;
        }
        op
    }

    /// `|ψ⟩⟨ψ|` for an arbitrary (not necessarily normalized) vector.
    pub fn outer(ket: &[C64]) -> Self {
        let dim = ket.len();
        let mut data = Vec::with_capacity(dim * dim);
        for a in ket {
            for b in ket {
                data.push(a * b.conj());
            }
        }
        Self { dim, data }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    /// `(M + M†) / 2`.
    pub fn symmetrized(&self) -> Self {
        let n = self.dim;
        let mut out = self.clone();
        for i in 0..n {
            out[(i, i)].im = 0.0;
            for j in (i + 1)..n {
                let avg = (self[(i, j)] + self[(j, i)].conj()) * 0.5;
                out[(i, j)] = avg;
                out[(j, i)] = avg.conj();
            }
        }
        out
    }

    /// `max|a_ij − conj(a_ji)|`.
    pub fn hermiticity_error(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_error() <= tol
    }

    /// `‖U†U − I‖_max`.
    pub fn unitarity_error(&self) -> f64 {
        let prod = self.adjoint().matmul(self).expect("square operands");
        prod.max_abs_diff(&Self::identity(self.dim))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Returns the diagonal if every off-diagonal entry is exactly zero.
    pub fn as_diagonal(&self) -> Option<Vec<C64>> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                if i != j && self[(i, j)] != C64::new(0.0, 0.0) {
                    return None;
                }
            }
        }
        Some((0..n).map(|i| self[(i, i)]).collect())
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::arg(format!(
                "cannot multiply {0}x{0} by {1}x{1}",
                self.dim, other.dim
            )));
        }
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            let out_row = &mut out.data[i * n..(i + 1) * n];
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for (o, b) in out_row.iter_mut().zip(&other.data[k * n..(k + 1) * n]) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    /// `self += weight · other`.
    pub fn add_scaled(&mut self, other: &Self, weight: f64) {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b * weight;
        }
    }

    /// `D M D*` for a diagonal `D` given by its entries.
    pub fn conjugate_by_diagonal(&self, diag: &[C64]) -> Self {
        assert_eq!(diag.len(), self.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = self.clone();
        for i in 0..n {
            let di = diag[i];
            for (j, z) in out.data[i * n..(i + 1) * n].iter_mut().enumerate() {
                *z = di * *z * diag[j].conj();
            }
        }
        out
    }

    /// Reorders tensor factors: subsystem `k` of the result is subsystem
    /// `order[k]` of `self`, whose factor dimensions are `dims`.
    pub fn permute_subsystems(&self, dims: &[usize], order: &[usize]) -> Result<Self> {
        let total: usize = dims.iter().product();
        if total != self.dim {
            return Err(Error::arg(format!(
                "subsystem dims multiply to {total}, operator has dim {}",
                self.dim
            )));
        }
        let mut seen = vec![false; dims.len()];
        if order.len() != dims.len()
            || order.iter().any(|&k| k >= dims.len() || std::mem::replace(&mut seen[k], true))
        {
            return Err(Error::arg(format!("{order:?} is not a permutation of 0..{}", dims.len())));
        }
        let src_strides = strides(dims);
        let new_dims: Vec<usize> = order.iter().map(|&k| dims[k]).collect();
        // map[new_index] = old_index
        let mut map = vec![0usize; total];
        let mut digits = vec![0usize; dims.len()];
        for slot in map.iter_mut() {
            *slot = order
                .iter()
                .zip(&digits)
                .map(|(&k, &d)| d * src_strides[k])
                .sum();
            for pos in (0..digits.len()).rev() {
                digits[pos] += 1;
                if digits[pos] < new_dims[pos] {
                    break;
                }
                digits[pos] = 0;
            }
        }
        let mut out = Self::zeros(total);
        for (i, &oi) in map.iter().enumerate() {
            for (j, &oj) in map.iter().enumerate() {
                out.data[i * total + j] = self.data[oi * total + oj];
            }
        }
        Ok(out)
    }

    pub(crate) fn data_mut(&mut self) -> &mut [C64] {
        &mut self.data
    }
}

impl Index<(usize, usize)> for ComplexOperator {
    type Output = C64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexOperator {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.dim + j]
    }
}

/// Row-major strides for a most-significant-first layout.
pub(crate) fn strides(dims: &[usize]) -> Vec<usize> {
    let mut out = vec![1usize; dims.len()];
    for k in (0..dims.len().saturating_sub(1)).rev() {
        out[k] = out[k + 1] * dims[k + 1];
    }
    out
}

/// Kronecker product; `a` owns the most significant index block.
pub fn kron(a: &ComplexOperator, b: &ComplexOperator) -> Result<ComplexOperator> {
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::arg("kron operands must be finite"));
    }
    let dim = a
        .dim
        .checked_mul(b.dim)
        .filter(|&d| d <= tolerance::max_dimension())
        .ok_or(Error::Resource {
            requested: a.dim.saturating_mul(b.dim),
            limit: tolerance::max_dimension(),
        })?;
    let (m, n) = (a.dim, b.dim);
    let mut out = ComplexOperator::zeros(dim);
    for i in 0..m {
        for j in 0..m {
            let x = a[(i, j)];
            if x == C64::new(0.0, 0.0) {
                continue;
            }
            for k in 0..n {
                let row = (i * n + k) * dim + j * n;
                for (o, y) in out.data[row..row + n].iter_mut().zip(b.row(k)) {
                    *o = x * y;
                }
            }
        }
    }
    Ok(out)
}
