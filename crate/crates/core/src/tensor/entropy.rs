use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tensor::density::DensityMatrix;
use crate::tensor::eigen::spectrum;
use crate::tolerance;

/// Logarithm base for entropies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EntropyBase {
    #[serde(rename = "2")]
    Two,
    #[serde(rename = "e")]
    E,
}

impl EntropyBase {
    pub fn ln_base(self) -> f64 {
        match self {
            EntropyBase::Two => std::f64::consts::LN_2,
            EntropyBase::E => 1.0,
        }
    }
}

/// `−Σ λ log λ` over the eigenvalues of a unit-trace state.
pub fn von_neumann_entropy(rho: &DensityMatrix, base: EntropyBase) -> Result<f64> {
    rho.require_normalized()?;
    entropy_of_spectrum(&spectrum(rho.op())?, base)
}

/// Shannon entropy of an eigenvalue list, ignoring values below the cutoff.
pub fn entropy_of_spectrum(values: &[f64], base: EntropyBase) -> Result<f64> {
    if let Some(&min) = values.first().filter(|&&v| v < -tolerance::ENTROPY_NEGATIVE) {
        return Err(Error::InvalidState(format!(
            "entropy of a state with eigenvalue {min:e}"
        )));
    }
    let nats: f64 = values
        .iter()
        .filter(|&&v| v > tolerance::ENTROPY_CUTOFF)
        .map(|&v| -v * v.ln())
        .sum();
    Ok((nats / base.ln_base()).max(0.0))
}
