//! Entanglement and correlation quantifiers.

mod bipartition;
mod certificate;
mod discord;
mod negativity;
mod report;

pub use bipartition::{Bipartition, BipartitionFamily};
pub use certificate::{
    carrier_certificate_details, carrier_cuts, carrier_separability_certificate, CarrierCut,
    StepCertificate,
};
pub use discord::{
    discord, discord_landscape, discord_with, measured_entropy, DiscordOptions, DiscordResult,
};
pub use negativity::{negative_eigenvalues, negativity, partial_transpose_spectrum};
pub use report::{aggregates, bipartition_report, geometric_mean, BipartitionEntry, BipartitionReport};
