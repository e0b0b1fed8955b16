use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::metrics::bipartition::Bipartition;
use crate::metrics::negativity::negativity;
use crate::protocol::ProtocolTrace;
use crate::tensor::{DensityMatrix, Role};
use crate::tolerance;

/// Negativity across `carriers | everything else`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CarrierCut {
    pub carriers: Vec<String>,
    pub negativity: f64,
}

impl CarrierCut {
    pub fn is_zero(&self) -> bool {
        self.negativity <= tolerance::CARRIER_CUT
    }
}

/// Every cut isolating carrier qubits: each carrier alone, then all carriers
/// jointly when there are several. Unnormalized states are normalized first.
pub fn carrier_cuts(state: &DensityMatrix) -> Result<Vec<CarrierCut>> {
    let carriers = state.register().labels_with_role(Role::Carrier);
    if carriers.is_empty() || carriers.len() == state.register().len() {
        return Ok(Vec::new());
    }
    let normalized;
    let rho = if state.is_normalized() {
        state
    } else {
        normalized = state.normalized()?;
        &normalized
    };
    let mut sides: Vec<Vec<String>> = carriers.iter().map(|c| vec![c.clone()]).collect();
    if carriers.len() > 1 {
        sides.push(carriers);
    }
    sides
        .into_par_iter()
        .map(|side| {
            let cut = Bipartition::new(rho.register(), &side)?;
            Ok(CarrierCut { negativity: negativity(rho, &cut)?, carriers: side })
        })
        .collect()
}

/// Per recorded state: `true` iff every carrier cut has zero negativity
/// (PPT, within [`tolerance::CARRIER_CUT`]).
pub fn carrier_separability_certificate(trace: &ProtocolTrace) -> Vec<bool> {
    trace.entries.iter().map(|e| e.carrier_separable()).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepCertificate {
    pub label: String,
    pub cuts: Vec<CarrierCut>,
    pub zero_negativity: bool,
}

/// [`carrier_separability_certificate`] with the underlying negativities.
pub fn carrier_certificate_details(trace: &ProtocolTrace) -> Vec<StepCertificate> {
    trace
        .entries
        .iter()
        .map(|e| StepCertificate {
            label: e.label.clone(),
            cuts: e.carrier_cuts.clone(),
            zero_negativity: e.carrier_separable(),
        })
        .collect()
}
