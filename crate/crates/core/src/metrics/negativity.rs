use crate::error::Result;
use crate::metrics::bipartition::Bipartition;
use crate::tensor::{spectrum, DensityMatrix};
use crate::tolerance;

/// Full ascending spectrum of the partial transpose over `cut.side_a()`.
pub fn partial_transpose_spectrum(rho: &DensityMatrix, cut: &Bipartition) -> Result<Vec<f64>> {
    rho.require_normalized()?;
    spectrum(&rho.partial_transpose(cut.side_a())?)
}

/// Partial-transpose eigenvalues below `-NEGATIVE_EIGENVALUE`, ascending.
pub fn negative_eigenvalues(rho: &DensityMatrix, cut: &Bipartition) -> Result<Vec<f64>> {
    Ok(partial_transpose_spectrum(rho, cut)?
        .into_iter()
        .take_while(|&v| v < -tolerance::NEGATIVE_EIGENVALUE)
        .collect())
}

/// `(‖ρ^{T_A}‖₁ − 1) / 2`.
pub fn negativity(rho: &DensityMatrix, cut: &Bipartition) -> Result<f64> {
    let trace_norm: f64 = partial_transpose_spectrum(rho, cut)?.iter().map(|v| v.abs()).sum();
    Ok(((trace_norm - 1.0) / 2.0).max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{bell_operator, pair_seed_state};
    use crate::tensor::{ComplexOperator, Register, Role};

    fn bell() -> DensityMatrix {
        DensityMatrix::new(Register::qubits(&["A", "B"], Role::Node).unwrap(), bell_operator()).unwrap()
    }

    #[test]
    fn bell_state_has_half_negativity() {
        let rho = bell();
        let cut = Bipartition::new(rho.register(), &["A"]).unwrap();
        assert!((negativity(&rho, &cut).unwrap() - 0.5).abs() < 1e-14);
        let negs = negative_eigenvalues(&rho, &cut).unwrap();
        assert_eq!(negs.len(), 1);
        assert!((negs[0] + 0.5).abs() < 1e-14);
    }

    #[test]
    fn complement_gives_same_negativity() {
        let rho = bell();
        let cut = Bipartition::new(rho.register(), &["B"]).unwrap();
        let a = negativity(&rho, &cut).unwrap();
        let b = negativity(&rho, &cut.complement()).unwrap();
        assert!((a - b).abs() < 1e-14);
    }

    #[test]
    fn seed_and_product_are_ppt() {
        let seed = pair_seed_state("A", "B").unwrap();
        let cut = Bipartition::new(seed.register(), &["A"]).unwrap();
        assert!(negative_eigenvalues(&seed, &cut).unwrap().is_empty());
        let mixed = DensityMatrix::new(
            Register::qubits(&["A", "B"], Role::Node).unwrap(),
            ComplexOperator::identity(4).scaled(0.25),
        )
        .unwrap();
        assert_eq!(negativity(&mixed, &cut).unwrap(), 0.0);
    }

    #[test]
    fn unnormalized_state_is_rejected() {
        let rho = bell();
        let p = rho.project("A", &crate::states::Ket::Zero.amplitudes(), false).unwrap();
        let cut = Bipartition::new(rho.register(), &["A"]).unwrap();
        assert!(negativity(&p.state, &cut).is_err());
    }
}
