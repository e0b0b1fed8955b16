//! Relative entropy of discord for two-qubit states.
//!
//! The measured qubit is projected onto the Bloch-sphere basis
//! `{|ψ(θ,φ)⟩, |ψ(π−θ,φ+π)⟩}` and the post-measurement entropy is minimized by a
//! deterministic grid search followed by compass refinement.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tensor::{entropy_of_spectrum, spectrum, von_neumann_entropy, ComplexOperator, DensityMatrix, EntropyBase, C64};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiscordResult {
    pub value: f64,
    pub theta: f64,
    pub phi: f64,
    pub base: EntropyBase,
    pub measured: String,
    /// `S(Π(ρ))` at the optimum.
    pub measured_entropy: f64,
    /// `S(ρ)`.
    pub state_entropy: f64,
    pub evaluations: usize,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiscordOptions {
    /// Points per angle in the coarse grid.
    pub grid: usize,
    /// Refinement stops once the compass step drops below this (radians).
    pub angle_tolerance: f64,
    pub max_evaluations: usize,
}

impl Default for DiscordOptions {
    fn default() -> Self {
        Self { grid: 64, angle_tolerance: 1e-6, max_evaluations: 200_000 }
    }
}

fn bloch_ket(theta: f64, phi: f64) -> [C64; 2] {
    [
        C64::new((theta / 2.0).cos(), 0.0),
        C64::from_polar((theta / 2.0).sin(), phi),
    ]
}

fn bloch_vector(theta: f64, phi: f64) -> [f64; 3] {
    [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()]
}

fn bloch_angles(n: [f64; 3]) -> (f64, f64) {
    let norm = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
    let theta = (n[2] / norm).clamp(-1.0, 1.0).acos();
    (theta, n[1].atan2(n[0]).rem_euclid(2.0 * PI))
}

fn check_two_qubit(rho: &DensityMatrix, measured: &str) -> Result<()> {
    rho.require_normalized()?;
    let r = rho.register();
    if r.len() != 2 || r.dims() != [2, 2] {
        return Err(Error::arg(format!("discord needs a two-qubit state, got {r}")));
    }
    r.position(measured)?;
    Ok(())
}

fn dephased_entropy(rho: &DensityMatrix, measured: &str, theta: f64, phi: f64, base: EntropyBase) -> Result<f64> {
    let mut out = ComplexOperator::zeros(rho.dim());
    for (t, p) in [(theta, phi), (PI - theta, phi + PI)] {
        out.add_scaled(&rho.sandwich_local(measured, &ComplexOperator::outer(&bloch_ket(t, p)))?, 1.0);
    }
    entropy_of_spectrum(&spectrum(&out)?, base)
}

/// `S(Σ_j π_j ρ π_j)` for the measurement basis at `(θ, φ)` on `measured`.
pub fn measured_entropy(rho: &DensityMatrix, measured: &str, theta: f64, phi: f64, base: EntropyBase) -> Result<f64> {
    check_two_qubit(rho, measured)?;
    dephased_entropy(rho, measured, theta, phi, base)
}

/// `S(Π(ρ)) − S(ρ)` on the `grid × grid` angle lattice, row-major in `θ`.
pub fn discord_landscape(
    rho: &DensityMatrix,
    measured: &str,
    base: EntropyBase,
    grid: usize,
) -> Result<Vec<(f64, f64, f64)>> {
    check_two_qubit(rho, measured)?;
    let s = von_neumann_entropy(rho, base)?;
    let mut out = Vec::with_capacity(grid * grid);
    for (theta, phi) in lattice(grid) {
        out.push((theta, phi, dephased_entropy(rho, measured, theta, phi, base)? - s));
    }
    Ok(out)
}

fn lattice(grid: usize) -> impl Iterator<Item = (f64, f64)> {
    let g = grid.max(2);
    (0..g).flat_map(move |i| {
        let theta = PI * i as f64 / (g - 1) as f64;
        (0..g).map(move |j| (theta, 2.0 * PI * j as f64 / g as f64))
    })
}

/// Discord with the default optimizer settings.
pub fn discord(rho: &DensityMatrix, measured: &str, base: EntropyBase) -> Result<DiscordResult> {
    discord_with(rho, measured, base, DiscordOptions::default())
}

pub fn discord_with(rho: &DensityMatrix, measured: &str, base: EntropyBase, options: DiscordOptions) -> Result<DiscordResult> {
    check_two_qubit(rho, measured)?;
    if options.grid < 2 || options.angle_tolerance.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) {
        return Err(Error::arg("discord grid needs ≥ 2 points and a positive angle tolerance"));
    }
    let state_entropy = von_neumann_entropy(rho, base)?;
    let mut evaluations = 0;
    let eval = |theta: f64, phi: f64, count: &mut usize| -> Result<f64> {
        *count += 1;
        dephased_entropy(rho, measured, theta, phi, base)
    };

    let (mut theta, mut phi, mut best) = (0.0, 0.0, f64::INFINITY);
    for (t, p) in lattice(options.grid) {
        let v = eval(t, p, &mut evaluations)?;
        if v < best {
            (theta, phi, best) = (t, p, v);
        }
    }

    // Refinement moves the Bloch vector along great circles in the local
    // (e_θ, e_φ) frame, which stays well defined at the poles.
    let mut step = PI / (options.grid - 1) as f64;
    while step >= options.angle_tolerance {
        if evaluations >= options.max_evaluations {
            return Err(Error::Optimizer { best: best - state_entropy, theta, phi, evaluations });
        }
        let n = bloch_vector(theta, phi);
        let e_theta = [theta.cos() * phi.cos(), theta.cos() * phi.sin(), -theta.sin()];
        let e_phi = [-phi.sin(), phi.cos(), 0.0];
        let mut moved = false;
        for (axis, sign) in [(e_theta, 1.0), (e_theta, -1.0), (e_phi, 1.0), (e_phi, -1.0)] {
            let (c, s) = (step.cos(), sign * step.sin());
            let (t, p) = bloch_angles([0, 1, 2].map(|k| c * n[k] + s * axis[k]));
            let v = eval(t, p, &mut evaluations)?;
            if v < best {
                (theta, phi, best) = (t, p, v);
                moved = true;
                break;
            }
        }
        if !moved {
            step /= 2.0;
        }
    }

    Ok(DiscordResult {
        value: best - state_entropy,
        theta,
        phi,
        base,
        measured: measured.to_owned(),
        measured_entropy: best,
        state_entropy,
        evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::pair_seed_state;
    use crate::tensor::{Register, Role};

    fn two(op: ComplexOperator) -> DensityMatrix {
        DensityMatrix::new(Register::qubits(&["A", "B"], Role::Node).unwrap(), op).unwrap()
    }

    #[test]
    fn classical_state_has_no_discord() {
        let rho = two(ComplexOperator::from_real(4, &[
            0.5, 0., 0., 0., 0., 0., 0., 0., 0., 0., 0., 0., 0., 0., 0., 0.5,
        ]).unwrap());
        let d = discord(&rho, "B", EntropyBase::Two).unwrap();
        assert!(d.value.abs() < 1e-8, "{}", d.value);
    }

    #[test]
    fn optimum_next_to_a_pole_is_found() {
        // classical in a basis tilted 0.017 rad from |0⟩, |1⟩ on B
        let (t, p) = (PI - 0.0173, 4.9);
        let up = bloch_ket(t, p);
        let down = [-up[1].conj(), up[0].conj()];
        let mut op = ComplexOperator::zeros(4);
        for (a, w) in [(0usize, [0.12, 0.01]), (1, [0.01, 0.01])] {
            for (b, wb) in [up, down].iter().zip(w) {
                let ket = [C64::new(1.0 - a as f64, 0.0), C64::new(a as f64, 0.0)];
                let full = [ket[0] * b[0], ket[0] * b[1], ket[1] * b[0], ket[1] * b[1]];
                op.add_scaled(&ComplexOperator::outer(&full), wb / 0.15);
            }
        }
        let d = discord(&two(op.symmetrized()), "B", EntropyBase::Two).unwrap();
        assert!(d.value.abs() < 1e-8, "{}", d.value);
    }

    #[test]
    fn seed_discord_in_base_two() {
        let rho = pair_seed_state("A", "B").unwrap();
        let d = discord(&rho, "B", EntropyBase::Two).unwrap();
        assert!((d.value - 0.0612781).abs() < 1e-6, "{}", d.value);
        let again = measured_entropy(&rho, "B", d.theta, d.phi, EntropyBase::Two).unwrap() - d.state_entropy;
        assert!((again - d.value).abs() < 1e-12);
        let e = discord(&rho, "B", EntropyBase::E).unwrap();
        assert!((e.value - d.value * std::f64::consts::LN_2).abs() < 1e-9);
    }

    #[test]
    fn rejects_larger_states() {
        let r = Register::qubits(&["A", "B", "C"], Role::Node).unwrap();
        let rho = DensityMatrix::new(r, ComplexOperator::identity(8).scaled(0.125)).unwrap();
        assert!(discord(&rho, "A", EntropyBase::Two).is_err());
    }

    #[test]
    fn evaluation_budget_is_enforced() {
        let rho = pair_seed_state("A", "B").unwrap();
        let opts = DiscordOptions { grid: 4, angle_tolerance: 1e-12, max_evaluations: 20 };
        assert!(matches!(discord_with(&rho, "B", EntropyBase::Two, opts), Err(Error::Optimizer { .. })));
    }
}
