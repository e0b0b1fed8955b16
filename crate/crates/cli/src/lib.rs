//! Command-line front end: topology ingestion, protocol runs, reference
//! tables, trend sweeps and JSON/CSV report emission.

pub mod commands;
pub mod config;
pub mod golden;
pub mod report;
