use crate::error::{Error, Result};
use crate::metrics::{carrier_cuts, CarrierCut};
use crate::protocol::gate::cphase_phases;
use crate::protocol::schedule::{GateStep, ProtocolSchedule, StepKind, Variant};
use crate::states::Ket;
use crate::tensor::DensityMatrix;

/// Name of the state before any gate.
pub const INITIAL_LABEL: &str = "α_T";

#[derive(Clone, Debug)]
pub struct TraceEntry {
    pub label: String,
    /// `None` for the initial state.
    pub step: Option<GateStep>,
    pub state: DensityMatrix,
    /// Outcome probability of a projection step.
    pub probability: Option<f64>,
    /// Negativity across every carrier cut of `state`.
    pub carrier_cuts: Vec<CarrierCut>,
}

impl TraceEntry {
    /// `true` when every carrier cut has zero negativity.
    pub fn carrier_separable(&self) -> bool {
        self.carrier_cuts.iter().all(CarrierCut::is_zero)
    }
}

/// Every named state a schedule passes through, starting with the initial one.
#[derive(Clone, Debug)]
pub struct ProtocolTrace {
    pub variant: Variant,
    pub entries: Vec<TraceEntry>,
}

impl ProtocolTrace {
    pub fn initial_state(&self) -> &DensityMatrix {
        &self.entries[0].state
    }

    pub fn final_state(&self) -> &DensityMatrix {
        &self.entries.last().expect("trace holds the initial state").state
    }

    pub fn get(&self, label: &str) -> Option<&TraceEntry> {
        self.entries.iter().find(|e| e.label == label)
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|e| e.label.as_str())
    }
}

fn entry(label: String, step: Option<GateStep>, state: DensityMatrix, probability: Option<f64>) -> Result<TraceEntry> {
    let carrier_cuts = carrier_cuts(&state)?;
    Ok(TraceEntry { label, step, state, probability, carrier_cuts })
}

/// Executes `schedule` on `initial`, recording each intermediate state with
/// its carrier-cut negativities. Failures carry the index of the step.
pub fn run(schedule: &ProtocolSchedule, initial: &DensityMatrix) -> Result<ProtocolTrace> {
    initial.require_normalized()?;
    schedule.validate(initial.register())?;
    let mut entries = vec![entry(INITIAL_LABEL.to_owned(), None, initial.clone(), None)?];
    let mut state = initial.clone();
    for (index, step) in schedule.steps.iter().enumerate() {
        let attach = |source: Error| Error::Step {
            index,
            label: step.produces.clone(),
            source: Box::new(source),
        };
        let (next, probability) = apply(&state, step).map_err(attach)?;
        let e = entry(step.produces.clone(), Some(step.clone()), next.clone(), probability).map_err(attach)?;
        entries.push(e);
        state = next;
    }
    Ok(ProtocolTrace { variant: schedule.variant, entries })
}

fn apply(state: &DensityMatrix, step: &GateStep) -> Result<(DensityMatrix, Option<f64>)> {
    Ok(match &step.kind {
        StepKind::Cphase { node, carrier } => {
            let phases = cphase_phases(state.register(), node, carrier)?;
            (state.conjugate_diagonal(&phases)?, None)
        }
        StepKind::Project { carrier, ket, renormalize } => {
            let p = state.project(carrier, &ket.amplitudes(), *renormalize)?;
            (p.state, Some(p.probability))
        }
        StepKind::TraceOut { carrier } => (state.trace_out(carrier)?, None),
        StepKind::Insert { state: fresh, .. } => (state.kron(fresh)?, None),
    })
}

/// Network state left after measuring carriers.
#[derive(Clone, Debug)]
pub struct PostSelection {
    pub state: DensityMatrix,
    /// Joint probability of all outcomes.
    pub probability: f64,
}

/// Projects each listed carrier of `state` onto `ket`, renormalizes and
/// traces the carriers out.
pub fn post_select<S: AsRef<str>>(state: &DensityMatrix, carriers: &[S], ket: Ket) -> Result<PostSelection> {
    if carriers.is_empty() {
        return Err(Error::arg("no carriers to post-select"));
    }
    let mut current = state.clone();
    let mut probability = 1.0;
    for c in carriers {
        let p = current.project(c.as_ref(), &ket.amplitudes(), true)?;
        probability *= p.probability;
        current = p.state.trace_out(c.as_ref())?;
    }
    Ok(PostSelection { state: current, probability })
}

/// Final state of `trace` with `carrier` projected onto `|A⟩` and removed.
pub fn post_select_carrier(trace: &ProtocolTrace, carrier: &str) -> Result<DensityMatrix> {
    Ok(post_select(trace.final_state(), &[carrier], Ket::A)?.state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::{negativity, Bipartition};
    use crate::protocol::schedule::{build_schedule, initial_state, StepRole};
    use crate::states::{carrier_state, pair_seed_state, Topology};

    fn two_qubit_trace() -> ProtocolTrace {
        let initial = pair_seed_state("A", "B").unwrap().kron(&carrier_state("K").unwrap()).unwrap();
        let steps = ["A", "B"]
            .iter()
            .zip(["β_T", "γ_T"])
            .map(|(node, produces)| GateStep {
                kind: StepKind::Cphase { node: node.to_string(), carrier: "K".into() },
                role: StepRole::Encoding,
                produces: produces.into(),
            })
            .collect();
        run(&ProtocolSchedule { variant: Variant::SingleCarrier, steps }, &initial).unwrap()
    }

    #[test]
    fn empty_schedule_keeps_initial_state() {
        let initial = initial_state(&Topology::ring(3).unwrap(), Variant::SingleCarrier).unwrap();
        let t = run(&ProtocolSchedule { variant: Variant::SingleCarrier, steps: vec![] }, &initial).unwrap();
        assert_eq!(t.entries.len(), 1);
        assert_eq!(t.final_state(), &initial);
        assert!(t.entries[0].carrier_separable());
    }

    #[test]
    fn two_qubit_protocol_entangles_nodes_only() {
        let t = two_qubit_trace();
        let g = t.final_state();
        for side in [["A"], ["B"]] {
            assert!(negativity(g, &Bipartition::new(g.register(), &side).unwrap()).unwrap() > 1e-4);
        }
        assert!(negativity(g, &Bipartition::new(g.register(), &["K"]).unwrap()).unwrap() < 1e-10);
        assert!(t.entries.iter().all(TraceEntry::carrier_separable));
        let reduced = post_select_carrier(&t, "K").unwrap();
        assert!(negativity(&reduced, &Bipartition::new(reduced.register(), &["A"]).unwrap()).unwrap() > 1e-4);
    }

    #[test]
    fn single_carrier_schedule_is_an_involution() {
        let topology = Topology::ring(4).unwrap();
        let s = build_schedule(&topology, Variant::SingleCarrier).unwrap();
        let initial = initial_state(&topology, Variant::SingleCarrier).unwrap();
        let once = run(&s, &initial).unwrap();
        let twice = run(&s, once.final_state()).unwrap();
        assert!(twice.final_state().op().max_abs_diff(initial.op()) < 1e-12);
    }

    #[test]
    fn relay_records_probability() {
        let topology = Topology::ring(4).unwrap();
        let s = build_schedule(&topology, Variant::Relay).unwrap();
        let t = run(&s, &initial_state(&topology, Variant::Relay).unwrap()).unwrap();
        let p = t.get("γ'_T").unwrap().probability.unwrap();
        assert!((p - 19.0 / 32.0).abs() < 1e-12);
        assert!(t.final_state().register().contains("K'"));
        assert!(!t.final_state().register().contains("K"));
    }

    #[test]
    fn step_errors_carry_index() {
        let initial = pair_seed_state("A", "B").unwrap().kron(&carrier_state("K").unwrap()).unwrap();
        let steps = vec![GateStep {
            kind: StepKind::Project { carrier: "K".into(), ket: Ket::Zero, renormalize: false },
            role: StepRole::RelayHandoff,
            produces: "x".into(),
        }, GateStep {
            kind: StepKind::Project { carrier: "K".into(), ket: Ket::One, renormalize: false },
            role: StepRole::RelayHandoff,
            produces: "y".into(),
        }];
        let err = run(&ProtocolSchedule { variant: Variant::Relay, steps }, &initial).unwrap_err();
        assert!(matches!(err, Error::Step { index: 1, .. }), "{err}");
    }
}
