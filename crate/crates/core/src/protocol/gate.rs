use crate::error::{Error, Result};
use crate::tensor::{ComplexOperator, Register, C64};

/// Diagonal of the CPHASE gate `|0⟩⟨0|_node ⊗ 1 + |1⟩⟨1|_node ⊗ σ_z,carrier`
/// on the full register: `−1` where both qubits are `|1⟩`, `+1` elsewhere.
pub fn cphase_phases(register: &Register, node: &str, carrier: &str) -> Result<Vec<C64>> {
    if node == carrier {
        return Err(Error::arg(format!("CPHASE needs two distinct qubits, got {node} twice")));
    }
    let (pn, pc) = (register.position(node)?, register.position(carrier)?);
    for p in [pn, pc] {
        let s = &register.subsystems()[p];
        if s.dim != 2 {
            return Err(Error::arg(format!("CPHASE acts on qubits; {} has dim {}", s.label, s.dim)));
        }
    }
    let strides = register.strides();
    let (sn, sc) = (strides[pn], strides[pc]);
    Ok((0..register.dim())
        .map(|i| {
            if (i / sn) % 2 == 1 && (i / sc) % 2 == 1 {
                C64::new(-1.0, 0.0)
            } else {
                C64::new(1.0, 0.0)
            }
        })
        .collect())
}

/// Full CPHASE matrix on `register`.
pub fn cphase_operator(register: &Register, node: &str, carrier: &str) -> Result<ComplexOperator> {
    Ok(ComplexOperator::from_diagonal(&cphase_phases(register, node, carrier)?))
}
