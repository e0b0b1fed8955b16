use crate::error::{Error, Result};
use crate::tensor::eigen::spectrum;
use crate::tensor::operator::{kron, ComplexOperator, C64};
use crate::tensor::register::{split_contributions, split_indices, Register};
use crate::tolerance;

/// A density operator on a labeled register.
///
/// Normalized states have `norm == 1`. Post-projection states kept without
/// renormalization carry the projection probability in `norm`, and their trace
/// equals it.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    register: Register,
    op: ComplexOperator,
    norm: f64,
}

/// Outcome of sandwiching a state with a rank-one projector.
#[derive(Clone, Debug)]
pub struct Projection {
    pub state: DensityMatrix,
    pub probability: f64,
}

impl DensityMatrix {
    /// Validates dimension, finiteness, Hermiticity and unit trace.
    pub fn new(register: Register, op: ComplexOperator) -> Result<Self> {
        Self::with_norm(register, op, 1.0)
    }

    /// A state whose trace is expected to equal `norm` (e.g. a projection
    /// probability).
    pub fn with_norm(register: Register, op: ComplexOperator, norm: f64) -> Result<Self> {
        if register.dim() != op.dim() {
            return Err(Error::arg(format!(
                "register {register} has dimension {}, operator {}",
                register.dim(),
                op.dim()
            )));
        }
        if !op.is_finite() {
            return Err(Error::InvalidState("entries must be finite".into()));
        }
        let herm = op.hermiticity_error();
        if herm > tolerance::HERMITIAN {
            return Err(Error::InvalidState(format!(
                "not Hermitian (max deviation {herm:e})"
            )));
        }
        let tr = op.trace();
        if (tr.re - norm).abs() > tolerance::TRACE || tr.im.abs() > tolerance::TRACE {
            return Err(Error::InvalidState(format!(
                "trace {tr} does not match expected norm {norm}"
            )));
        }
        Ok(Self { register, op, norm })
    }

    /// Skips validation; callers guarantee the invariants.
    pub(crate) fn from_parts(register: Register, op: ComplexOperator, norm: f64) -> Self {
        debug_assert_eq!(register.dim(), op.dim());
        Self { register, op, norm }
    }

    pub fn register(&self) -> &Register {
        &self.register
    }

    pub fn op(&self) -> &ComplexOperator {
        &self.op
    }

    pub fn into_op(self) -> ComplexOperator {
        self.op
    }

    pub fn norm(&self) -> f64 {
        self.norm
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm - 1.0).abs() <= tolerance::TRACE
    }

    pub(crate) fn require_normalized(&self) -> Result<()> {
        if self.is_normalized() {
            Ok(())
        } else {
            Err(Error::InvalidState(format!(
                "operation requires a unit-trace state, got norm {}",
                self.norm
            )))
        }
    }

    /// Divides by the trace.
    pub fn normalized(&self) -> Result<DensityMatrix> {
        let tr = self.op.trace().re;
        if tr < tolerance::MIN_PROBABILITY {
            return Err(Error::ImpossibleOutcome { probability: tr });
        }
        Ok(Self::from_parts(
            self.register.clone(),
            self.op.scaled(1.0 / tr),
            1.0,
        ))
    }

    /// Lowest eigenvalue; errors if it is below `-POSITIVITY · norm`.
    pub fn check_positive(&self) -> Result<f64> {
        let min = spectrum(&self.op)?.first().copied().unwrap_or(0.0);
        if min < -tolerance::POSITIVITY * self.norm.max(1.0) {
            return Err(Error::InvalidState(format!(
                "minimum eigenvalue {min:e} is negative"
            )));
        }
        Ok(min)
    }

    /// Tensor product with `other` in the less significant positions.
    pub fn kron(&self, other: &DensityMatrix) -> Result<DensityMatrix> {
        let register = self.register.concat(&other.register)?;
        let op = kron(&self.op, &other.op)?;
        Ok(Self::from_parts(register, op, self.norm * other.norm))
    }

    /// Reduced state on `keep`; the result keeps the original label order.
    pub fn partial_trace<S: AsRef<str>>(&self, keep: &[S]) -> Result<DensityMatrix> {
        if keep.is_empty() {
            return Err(Error::arg("partial trace must keep at least one subsystem"));
        }
        let mask = self.register.mask(keep)?;
        let reduced = self.register.select(&mask);
        let dk = reduced.dim();
        let dt = self.dim() / dk;
        let split = split_indices(&self.register.dims(), &mask);

        let mut buckets: Vec<Vec<(usize, usize)>> = vec![Vec::new(); dt];
        for (full, &(kept, traced)) in split.iter().enumerate() {
            buckets[traced].push((full, kept));
        }
        let mut out = ComplexOperator::zeros(dk);
        for bucket in &buckets {
            for &(a, ka) in bucket {
                let row = self.op.row(a);
                for &(b, kb) in bucket {
                    out[(ka, kb)] += row[b];
                }
            }
        }
        Ok(Self::from_parts(reduced, out, self.norm))
    }

    /// Removes one subsystem by tracing it out.
    pub fn trace_out(&self, label: &str) -> Result<DensityMatrix> {
        self.register.position(label)?;
        let keep: Vec<&str> = self.register.labels().filter(|l| *l != label).collect();
        self.partial_trace(&keep)
    }

    /// Partial transpose over the subsystems in `side`, which must be a proper
    /// nonempty subset of the register.
    pub fn partial_transpose<S: AsRef<str>>(&self, side: &[S]) -> Result<ComplexOperator> {
        let mask = self.register.mask(side)?;
        let count = mask.iter().filter(|&&m| m).count();
        if count == 0 || count == mask.len() {
            return Err(Error::arg(
                "partial transpose needs a proper nonempty subset (no bipartition otherwise)",
            ));
        }
        Ok(partial_transpose_mask(&self.op, &self.register.dims(), &mask))
    }

    /// `U ρ U†`, re-symmetrized.
    pub fn conjugate(&self, u: &ComplexOperator) -> Result<DensityMatrix> {
        if u.dim() != self.dim() {
            return Err(Error::arg(format!(
                "unitary has dim {}, state has dim {}",
                u.dim(),
                self.dim()
            )));
        }
        let err = u.unitarity_error();
        if err > tolerance::UNITARITY {
            return Err(Error::arg(format!("operator is not unitary (error {err:e})")));
        }
        let op = u.matmul(&self.op)?.matmul(&u.adjoint())?.symmetrized();
        Ok(Self::from_parts(self.register.clone(), op, self.norm))
    }

    /// `D ρ D*` for a diagonal unitary given by its entries.
    pub fn conjugate_diagonal(&self, diag: &[C64]) -> Result<DensityMatrix> {
        if diag.len() != self.dim() {
            return Err(Error::arg("diagonal length does not match the state"));
        }
        if let Some(z) = diag.iter().find(|z| (z.norm() - 1.0).abs() > tolerance::UNITARITY) {
            return Err(Error::arg(format!("diagonal entry {z} is not a phase")));
        }
        let op = self.op.conjugate_by_diagonal(diag).symmetrized();
        Ok(Self::from_parts(self.register.clone(), op, self.norm))
    }

    /// `L ρ L†` with `L` acting on a single subsystem.
    pub fn sandwich_local(&self, label: &str, local: &ComplexOperator) -> Result<ComplexOperator> {
        let pos = self.register.position(label)?;
        let d = self.register.subsystems()[pos].dim;
        if local.dim() != d {
            return Err(Error::arg(format!(
                "local operator has dim {}, subsystem {label} has dim {d}",
                local.dim()
            )));
        }
        Ok(sandwich_local(&self.op, self.register.strides()[pos], d, local))
    }

    /// Projects one subsystem onto `ket`. The probability is the trace of the
    /// sandwich (relative to the current norm); with `renormalize` the state is
    /// divided by it, otherwise it carries the probability as its norm.
    pub fn project(&self, label: &str, ket: &[C64], renormalize: bool) -> Result<Projection> {
        let nrm: f64 = ket.iter().map(|z| z.norm_sqr()).sum();
        if (nrm - 1.0).abs() > 1e-12 {
            return Err(Error::arg(format!("projection ket has norm² {nrm}")));
        }
        let sandwich = self.sandwich_local(label, &ComplexOperator::outer(ket))?;
        let weight = sandwich.trace().re;
        let probability = weight / self.norm;
        if probability < tolerance::MIN_PROBABILITY {
            return Err(Error::ImpossibleOutcome { probability });
        }
        let sandwich = sandwich.symmetrized();
        let state = if renormalize {
            Self::from_parts(self.register.clone(), sandwich.scaled(1.0 / weight), 1.0)
        } else {
            Self::from_parts(self.register.clone(), sandwich, weight)
        };
        Ok(Projection { state, probability })
    }
}

pub(crate) fn partial_transpose_mask(
    op: &ComplexOperator,
    dims: &[usize],
    mask: &[bool],
) -> ComplexOperator {
    let n = op.dim();
    let parts = split_contributions(dims, mask);
    let mut out = ComplexOperator::zeros(n);
    let data = out.data_mut();
    for (i, &(side_i, rest_i)) in parts.iter().enumerate() {
        let row = op.row(i);
        for (j, &(side_j, rest_j)) in parts.iter().enumerate() {
            data[(rest_i + side_j) * n + rest_j + side_i] = row[j];
        }
    }
    out
}

fn sandwich_local(op: &ComplexOperator, stride: usize, d: usize, local: &ComplexOperator) -> ComplexOperator {
    let n = op.dim();
    let digit = |i: usize| (i / stride) % d;
    // left: (Lρ)[i][j] = Σ_b L[a_i][b] ρ[base_i + b·stride][j]
    let mut left = ComplexOperator::zeros(n);
    for i in 0..n {
        let a = digit(i);
        let base = i - a * stride;
        for b in 0..d {
            let l = local[(a, b)];
            if l == C64::new(0.0, 0.0) {
                continue;
            }
            let src = op.row(base + b * stride);
            for (j, z) in src.iter().enumerate() {
                left[(i, j)] += l * z;
            }
        }
    }
    // right: (X L†)[i][j] = Σ_b X[i][base_j + b·stride] conj(L[a_j][b])
    let mut out = ComplexOperator::zeros(n);
    for j in 0..n {
        let a = digit(j);
        let base = j - a * stride;
        for b in 0..d {
            let l = local[(a, b)].conj();
            if l == C64::new(0.0, 0.0) {
                continue;
            }
            let col = base + b * stride;
            for i in 0..n {
                out[(i, j)] += left[(i, col)] * l;
            }
        }
    }
    out
}
