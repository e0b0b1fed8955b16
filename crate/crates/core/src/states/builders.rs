use crate::error::{Error, Result};
use crate::states::ket::Ket;
use crate::states::topology::{node_label, Topology, TopologyKind};
use crate::tensor::{kron, ComplexOperator, DensityMatrix, Register, Role, C64};

/// Label of the single carrier qubit.
pub const CARRIER: &str = "K";

/// `Ki`, 1-based.
pub fn carrier_label(index: usize) -> String {
    format!("K{index}")
}

/// Matrix of the discordant two-qubit seed
/// `¼(|00⟩⟨00| + |11⟩⟨11|) + ⅛(|DD⟩⟨DD| + |AA⟩⟨AA| + |RL⟩⟨RL| + |LR⟩⟨LR|)`.
pub fn seed_operator() -> ComplexOperator {
    let mut op = ComplexOperator::zeros(4);
    for (a, b, w) in [
        (Ket::Zero, Ket::Zero, 0.25),
        (Ket::One, Ket::One, 0.25),
        (Ket::D, Ket::D, 0.125),
        (Ket::A, Ket::A, 0.125),
        (Ket::R, Ket::L, 0.125),
        (Ket::L, Ket::R, 0.125),
    ] {
        op.add_scaled(&ComplexOperator::outer(&a.pair(b)), w);
    }
    op
}

/// `¼|D⟩⟨D| + ¾|A⟩⟨A|`.
pub fn carrier_operator() -> ComplexOperator {
    let mut op = Ket::D.projector().scaled(0.25);
    op.add_scaled(&Ket::A.projector(), 0.75);
    op
}

/// `|φ⁺⟩⟨φ⁺|` with `|φ⁺⟩ = (|00⟩ + |11⟩)/√2`.
pub fn bell_operator() -> ComplexOperator {
    let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let zero = C64::new(0.0, 0.0);
    ComplexOperator::outer(&[h, zero, zero, h])
}

/// Discordant seed on the register `(a, b)`.
pub fn pair_seed_state(a: &str, b: &str) -> Result<DensityMatrix> {
    if a == b {
        return Err(Error::arg(format!("seed needs two distinct nodes, got {a} twice")));
    }
    DensityMatrix::new(Register::qubits(&[a, b], Role::Node)?, seed_operator())
}

pub fn carrier_state(label: &str) -> Result<DensityMatrix> {
    DensityMatrix::new(Register::qubits(&[label], Role::Carrier)?, carrier_operator())
}

/// `⊗ᵢ α_K` on carriers `K1..Kn`.
pub fn multi_carrier_state(n_carriers: usize) -> Result<DensityMatrix> {
    if n_carriers == 0 {
        return Err(Error::arg("need at least one carrier"));
    }
    let mut state = carrier_state(&carrier_label(1))?;
    for i in 2..=n_carriers {
        state = state.kron(&carrier_state(&carrier_label(i))?)?;
    }
    Ok(state)
}

/// Operator on nodes `Q1..Qn`: each factor occupies its listed 1-based nodes
/// (in the listed order) and every other node is `|0⟩⟨0|`.
pub(crate) fn place_on_nodes(n: usize, factors: &[(&[usize], &ComplexOperator)]) -> Result<ComplexOperator> {
    let mut source_nodes = Vec::with_capacity(n);
    let mut op = ComplexOperator::identity(1);
    for (nodes, factor) in factors {
        if factor.dim() != 1 << nodes.len() {
            return Err(Error::arg("factor dimension does not match its node count"));
        }
        source_nodes.extend_from_slice(nodes);
        op = kron(&op, factor)?;
    }
    let ground = Ket::Zero.projector();
    for node in 1..=n {
        if !source_nodes.contains(&node) {
            source_nodes.push(node);
            op = kron(&op, &ground)?;
        }
    }
    if source_nodes.len() != n {
        return Err(Error::arg("factors overlap or reference unknown nodes"));
    }
    let order: Vec<usize> = (1..=n)
        .map(|node| source_nodes.iter().position(|&s| s == node).expect("every node placed"))
        .collect();
    op.permute_subsystems(&vec![2; n], &order)
}

fn node_register(n: usize) -> Result<Register> {
    let labels: Vec<String> = (1..=n).map(node_label).collect();
    Register::qubits(&labels, Role::Node)
}

/// Uniform mixture over the topology's pairs of the seed on that pair with
/// `|0⟩⟨0|` on every other node.
pub fn network_state(topology: &Topology) -> Result<DensityMatrix> {
    if topology.kind() == TopologyKind::AppendixA {
        return Err(Error::arg(
            "simultaneous-pairs topologies are built with appendix_a_state",
        ));
    }
    let n = topology.node_count();
    let pairs = topology.pairs();
    if pairs.is_empty() {
        return Err(Error::arg("topology has no pairs"));
    }
    let seed = seed_operator();
    let mut op = ComplexOperator::zeros(1 << n);
    for &(i, j) in pairs {
        op.add_scaled(&place_on_nodes(n, &[(&[i, j], &seed)])?, 1.0 / pairs.len() as f64);
    }
    DensityMatrix::new(node_register(n)?, op)
}

/// `(N+2)`-term mixture: the two perfect-matching seed products and the `N`
/// ring terms, each with weight `1/(N+2)`.
pub fn appendix_a_state(n: usize) -> Result<DensityMatrix> {
    let mut op = ComplexOperator::zeros(1 << n);
    for (weight, term) in appendix_a_terms(n)? {
        op.add_scaled(&term, weight);
    }
    DensityMatrix::new(node_register(n)?, op)
}

/// Weighted terms of [`appendix_a_state`]: matchings first, then ring pairs.
pub fn appendix_a_terms(n: usize) -> Result<Vec<(f64, ComplexOperator)>> {
    let topology = Topology::appendix_a(n)?;
    let seed = seed_operator();
    let weight = 1.0 / (n + 2) as f64;
    let mut terms = Vec::with_capacity(n + 2);
    for matching in topology.matchings().expect("appendixA") {
        terms.push((weight, matching_product(n, &matching, &seed)?));
    }
    for &(i, j) in topology.pairs() {
        terms.push((weight, place_on_nodes(n, &[(&[i, j], &seed)])?));
    }
    Ok(terms)
}

/// Only the two perfect-matching terms, mixed equally. This state alone does
/// not keep the carrier separable.
#[allow(dead_code)]
pub(crate) fn matching_mixture(n: usize) -> Result<DensityMatrix> {
    let topology = Topology::appendix_a(n)?;
    let seed = seed_operator();
    let mut op = ComplexOperator::zeros(1 << n);
    for matching in topology.matchings().expect("appendixA") {
        op.add_scaled(&matching_product(n, &matching, &seed)?, 0.5);
    }
    DensityMatrix::new(node_register(n)?, op)
}

/// `factor` placed on every pair of a perfect matching.
pub(crate) fn matching_product(
    n: usize,
    matching: &[(usize, usize)],
    factor: &ComplexOperator,
) -> Result<ComplexOperator> {
    let nodes: Vec<[usize; 2]> = matching.iter().map(|&(i, j)| [i, j]).collect();
    let factors: Vec<(&[usize], &ComplexOperator)> =
        nodes.iter().map(|p| (&p[..], factor)).collect();
    place_on_nodes(n, &factors)
}
