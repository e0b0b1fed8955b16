//! Density-matrix simulation of entanglement distribution via separable carriers.
//!
//! A network of node qubits starts in a separable but discordant mixture. One or
//! more carrier qubits, prepared in a state uncorrelated with the network, are
//! passed between nodes and interact with each through a controlled-phase gate.
//! The resulting network state is entangled across every node bipartition while
//! the carrier never becomes entangled with the nodes.
//!
//! The crate is organised bottom-up:
//!
//! - [`tensor`]: dense complex operators on labeled registers (Kronecker
//!   products, partial trace and transpose, Hermitian spectra, entropies).
//! - [`states`]: single-qubit kets, the discordant pair seed, carrier states,
//!   topology-specific network mixtures and the final-state decomposition.
//! - [`protocol`]: CPHASE schedules for single-carrier, multi-carrier,
//!   star-qudit and relay variants, and their execution with a full state trace.
//! - [`metrics`]: negative partial-transpose spectra, negativity, bipartition
//!   reports, carrier separability certificates and relative entropy of discord.
//!
//! ```
//! use edss::prelude::*;
//!
//! let topology = Topology::ring(4).unwrap();
//! let schedule = build_schedule(&topology, Variant::SingleCarrier).unwrap();
//! let initial = initial_state(&topology, Variant::SingleCarrier).unwrap();
//! let trace = run(&schedule, &initial).unwrap();
//!
//! let cut = Bipartition::new(trace.final_state().register(), &["Q1"]).unwrap();
//! let negs = negative_eigenvalues(trace.final_state(), &cut).unwrap();
//! assert_eq!(negs.len(), 1);
//! assert!((negs[0] + 0.0175206).abs() < 1e-6);
//! ```

pub mod error;
pub mod metrics;
pub mod protocol;
pub mod states;
pub mod tensor;
pub mod tolerance;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::error::{Error, Result};
    pub use crate::metrics::{
        bipartition_report, carrier_separability_certificate, discord, negative_eigenvalues,
        negativity, Bipartition, BipartitionFamily, BipartitionReport, DiscordResult,
    };
    pub use crate::protocol::{
        build_schedule, cphase_operator, initial_state, post_select_carrier, run, GateStep,
        ProtocolSchedule, ProtocolTrace, StepKind, Variant,
    };
    pub use crate::states::{
        appendix_a_state, carrier_state, decompose_final_state, multi_carrier_state,
        network_state, pair_seed_state, Ket, StateDecomposition, Topology, TopologyKind,
    };
    pub use crate::tensor::{
        eig_hermitian, kron, spectrum, von_neumann_entropy, ComplexOperator, DensityMatrix,
        EntropyBase, Register, Role, C64,
    };
}
