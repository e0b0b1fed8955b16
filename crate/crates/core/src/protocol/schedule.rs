use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::states::{
    appendix_a_state, carrier_label, carrier_state, multi_carrier_state, network_state,
    node_label, Ket, Topology, TopologyKind, CARRIER,
};
use crate::tensor::{DensityMatrix, Register};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    SingleCarrier,
    MultiCarrier,
    StarQudit,
    Relay,
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "single" | "single_carrier" => Variant::SingleCarrier,
            "multi" | "multi_carrier" => Variant::MultiCarrier,
            "qudit" | "star_qudit" => Variant::StarQudit,
            "relay" => Variant::Relay,
            _ => return Err(Error::arg(format!("unknown variant {s:?}"))),
        })
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::SingleCarrier => "single",
            Variant::MultiCarrier => "multi",
            Variant::StarQudit => "qudit",
            Variant::Relay => "relay",
        })
    }
}

/// What a step does for the links it touches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepRole {
    Encoding,
    Decoding,
    /// Decodes some links and encodes others (single carrier on a ring).
    EncodingDecoding,
    RelayHandoff,
}

#[derive(Clone, Debug, PartialEq)]
pub enum StepKind {
    Cphase { node: String, carrier: String },
    Project { carrier: String, ket: Ket, renormalize: bool },
    TraceOut { carrier: String },
    Insert { carrier: String, state: DensityMatrix },
}

#[derive(Clone, Debug, PartialEq)]
pub struct GateStep {
    pub kind: StepKind,
    pub role: StepRole,
    /// Name of the state this step produces.
    pub produces: String,
}

impl fmt::Display for GateStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            StepKind::Cphase { node, carrier } => write!(f, "P[{node},{carrier}]"),
            StepKind::Project { carrier, ket, renormalize } => {
                write!(f, "project {carrier} on |{ket}⟩")?;
                if *renormalize {
                    f.write_str(" (renormalized)")?;
                }
                Ok(())
            }
            StepKind::TraceOut { carrier } => write!(f, "trace out {carrier}"),
            StepKind::Insert { carrier, .. } => write!(f, "insert fresh {carrier}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProtocolSchedule {
    pub variant: Variant,
    pub steps: Vec<GateStep>,
}

impl ProtocolSchedule {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Checks carrier bookkeeping against the register the schedule starts on:
    /// every CPHASE and projection references a present carrier, inserted
    /// carriers are new, traced-out carriers exist.
    pub fn validate(&self, initial: &Register) -> Result<()> {
        let mut present: HashSet<String> = initial.labels().map(str::to_owned).collect();
        for (index, step) in self.steps.iter().enumerate() {
            let fail = |msg: String| Error::Step {
                index,
                label: step.produces.clone(),
                source: Box::new(Error::Argument(msg)),
            };
            match &step.kind {
                StepKind::Cphase { node, carrier } => {
                    for l in [node, carrier] {
                        if !present.contains(l) {
                            return Err(fail(format!("{l} is not in the register")));
                        }
                    }
                    if node == carrier {
                        return Err(fail(format!("CPHASE on {node} twice")));
                    }
                }
                StepKind::Project { carrier, .. } => {
                    if !present.contains(carrier) {
                        return Err(fail(format!("{carrier} is not in the register")));
                    }
                }
                StepKind::TraceOut { carrier } => {
                    if !present.remove(carrier) {
                        return Err(fail(format!("{carrier} is not in the register")));
                    }
                }
                StepKind::Insert { carrier, state } => {
                    if state.register().len() != 1 || state.register().labels().next() != Some(carrier) {
                        return Err(fail(format!("inserted state is not a lone {carrier}")));
                    }
                    if !present.insert(carrier.clone()) {
                        return Err(fail(format!("{carrier} is already present")));
                    }
                }
            }
        }
        Ok(())
    }
}

const GREEK: [&str; 8] = ["β", "γ", "δ", "η", "ζ", "κ", "χ", "ω"];

/// Name of the state after the `k`-th gate (0-based).
fn gate_state_name(k: usize) -> String {
    match GREEK.get(k) {
        Some(g) => format!("{g}_T"),
        None => format!("step{}_T", k + 1),
    }
}

fn gate_base(k: usize) -> String {
    GREEK.get(k).map_or_else(|| format!("step{}", k + 1), |g| g.to_string())
}

fn cphase(node: usize, carrier: &str, role: StepRole, k: usize) -> GateStep {
    GateStep {
        kind: StepKind::Cphase { node: node_label(node), carrier: carrier.to_owned() },
        role,
        produces: gate_state_name(k),
    }
}

/// Carrier labels used by `variant` on `topology`, in register order.
pub fn carrier_labels(topology: &Topology, variant: Variant) -> Vec<String> {
    match variant {
        Variant::SingleCarrier | Variant::Relay => vec![CARRIER.to_owned()],
        Variant::MultiCarrier | Variant::StarQudit => {
            (1..=topology.pairs().len()).map(carrier_label).collect()
        }
    }
}

fn check_compatible(topology: &Topology, variant: Variant) -> Result<()> {
    match (variant, topology.kind()) {
        (Variant::StarQudit, TopologyKind::Star { .. }) => Ok(()),
        (Variant::StarQudit, _) => Err(Error::arg("the qudit variant needs a star topology")),
        (Variant::Relay, TopologyKind::Ring) if topology.node_count().is_multiple_of(2) => Ok(()),
        (Variant::Relay, TopologyKind::Ring) => Err(Error::arg(
            "the relay variant hands the carrier over after every node pair; it needs an even node count",
        )),
        (Variant::Relay, _) => Err(Error::arg("the relay variant needs a ring topology")),
        _ => Ok(()),
    }
}

/// `α_N ⊗ α_K̄`: the network mixture with every carrier the schedule starts
/// with appended.
pub fn initial_state(topology: &Topology, variant: Variant) -> Result<DensityMatrix> {
    check_compatible(topology, variant)?;
    let network = match topology.kind() {
        TopologyKind::AppendixA => appendix_a_state(topology.node_count())?,
        _ => network_state(topology)?,
    };
    let carriers = match variant {
        Variant::SingleCarrier | Variant::Relay => carrier_state(CARRIER)?,
        Variant::MultiCarrier | Variant::StarQudit => multi_carrier_state(topology.pairs().len())?,
    };
    network.kron(&carriers)
}

/// CPHASE schedule for `variant` on `topology`.
///
/// - single carrier: one gate per node, in index order (star: center first).
/// - multi carrier / star qudit: carrier `K_k` encodes at the first node of
///   pair `C_k` and decodes at the second.
/// - relay: consecutive node pairs share a carrier, which is then projected
///   onto `|A⟩`, traced out and replaced by a fresh one.
pub fn build_schedule(topology: &Topology, variant: Variant) -> Result<ProtocolSchedule> {
    check_compatible(topology, variant)?;
    let steps = match variant {
        Variant::SingleCarrier => single_carrier_steps(topology),
        Variant::MultiCarrier | Variant::StarQudit => topology
            .pairs()
            .iter()
            .enumerate()
            .flat_map(|(k, &(a, b))| {
                let carrier = carrier_label(k + 1);
                [
                    cphase(a, &carrier, StepRole::Encoding, 2 * k),
                    cphase(b, &carrier, StepRole::Decoding, 2 * k + 1),
                ]
            })
            .collect(),
        Variant::Relay => relay_steps(topology.node_count())?,
    };
    Ok(ProtocolSchedule { variant, steps })
}

fn single_carrier_steps(topology: &Topology) -> Vec<GateStep> {
    let n = topology.node_count();
    let involved: HashSet<usize> = topology.pairs().iter().flat_map(|&(a, b)| [a, b]).collect();
    let mut order: Vec<usize> = (1..=n).filter(|i| involved.contains(i)).collect();
    if let TopologyKind::Star { center } = topology.kind() {
        order.retain(|&i| i != center);
        order.insert(0, center);
    }
    let mut visited = HashSet::new();
    order
        .iter()
        .enumerate()
        .map(|(k, &node)| {
            let mut encodes = false;
            let mut decodes = false;
            for &(a, b) in topology.pairs() {
                let partner = if a == node { b } else if b == node { a } else { continue };
                if visited.contains(&partner) {
                    decodes = true;
                } else {
                    encodes = true;
                }
            }
            visited.insert(node);
            let role = match (encodes, decodes) {
                (true, true) => StepRole::EncodingDecoding,
                (false, true) => StepRole::Decoding,
                _ => StepRole::Encoding,
            };
            cphase(node, CARRIER, role, k)
        })
        .collect()
}

fn relay_steps(n: usize) -> Result<Vec<GateStep>> {
    let legs = n / 2;
    let mut steps = Vec::new();
    let mut gates = 0;
    for leg in 0..legs {
        let carrier = format!("{CARRIER}{}", "'".repeat(leg));
        for (offset, role) in [(1, StepRole::Encoding), (2, StepRole::Decoding)] {
            steps.push(cphase(2 * leg + offset, &carrier, role, gates));
            gates += 1;
        }
        if leg + 1 == legs {
            break;
        }
        let base = gate_base(gates - 1);
        let fresh = format!("{CARRIER}{}", "'".repeat(leg + 1));
        steps.push(GateStep {
            kind: StepKind::Project { carrier: carrier.clone(), ket: Ket::A, renormalize: true },
            role: StepRole::RelayHandoff,
            produces: format!("{base}'_T"),
        });
        steps.push(GateStep {
            kind: StepKind::TraceOut { carrier },
            role: StepRole::RelayHandoff,
            produces: format!("{base}_N"),
        });
        steps.push(GateStep {
            kind: StepKind::Insert { carrier: fresh.clone(), state: carrier_state(&fresh)? },
            role: StepRole::RelayHandoff,
            produces: format!("{base}''_T"),
        });
    }
    Ok(steps)
}
