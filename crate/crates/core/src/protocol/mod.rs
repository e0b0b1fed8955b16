//! CPHASE schedules for each distribution variant and their execution.

mod gate;
mod run;
mod schedule;

pub use gate::{cphase_operator, cphase_phases};
pub use run::{
    post_select, post_select_carrier, run, PostSelection, ProtocolTrace, TraceEntry, INITIAL_LABEL,
};
pub use schedule::{
    build_schedule, carrier_labels, initial_state, GateStep, ProtocolSchedule, StepKind, StepRole,
    Variant,
};
