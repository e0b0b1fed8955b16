//! Initial states: kets, the discordant pair seed, carrier states and
//! topology-specific network mixtures, plus the final-state decomposition.

mod builders;
mod decomposition;
mod ket;
mod topology;

pub use builders::{
    appendix_a_state, appendix_a_terms, bell_operator, carrier_label, carrier_operator,
    carrier_state, multi_carrier_state, network_state, pair_seed_state, seed_operator, CARRIER,
};
pub use decomposition::{decompose_final_state, MatchingWeights, PairTerm, StateDecomposition};
pub use ket::Ket;
pub use topology::{node_label, Topology, TopologyKind};
