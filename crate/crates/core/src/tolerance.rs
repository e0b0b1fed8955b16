//! Numerical thresholds shared across the crate.

use std::sync::atomic::{AtomicUsize, Ordering};

/// Maximum allowed `max|a_ij - conj(a_ji)|` for an operator flagged Hermitian.
pub const HERMITIAN: f64 = 1e-12;

/// Maximum allowed deviation of a normalized state's trace from 1.
pub const TRACE: f64 = 1e-10;

/// An eigenvalue counts as negative only below `-NEGATIVE_EIGENVALUE`.
pub const NEGATIVE_EIGENVALUE: f64 = 1e-10;

/// Lowest eigenvalue tolerated in a density matrix.
pub const POSITIVITY: f64 = 1e-10;

/// `‖U†U − I‖_max` bound for an operator accepted as unitary.
pub const UNITARITY: f64 = 1e-10;

/// Projection probabilities below this are treated as impossible outcomes.
pub const MIN_PROBABILITY: f64 = 1e-12;

/// Eigenvalues below this contribute nothing to an entropy.
pub const ENTROPY_CUTOFF: f64 = 1e-12;

/// Entropy inputs with an eigenvalue below `-ENTROPY_NEGATIVE` are rejected.
pub const ENTROPY_NEGATIVE: f64 = 1e-8;

/// Separability certificates accept carrier cuts with negativity at most this.
pub const CARRIER_CUT: f64 = 1e-10;

/// Largest final-state decomposition residual accepted as a fit.
pub const DECOMPOSITION_RESIDUAL: f64 = 1e-8;

/// Default dense register limit, in qubits.
pub const DEFAULT_MAX_QUBITS: usize = 12;

static MAX_DIMENSION: AtomicUsize = AtomicUsize::new(1 << DEFAULT_MAX_QUBITS);

/// Largest operator dimension any constructor will allocate.
pub fn max_dimension() -> usize {
    MAX_DIMENSION.load(Ordering::Relaxed)
}

/// Overrides the dense limit. Values below 2 are clamped to 2.
pub fn set_max_dimension(dim: usize) {
    MAX_DIMENSION.store(dim.max(2), Ordering::Relaxed);
}
