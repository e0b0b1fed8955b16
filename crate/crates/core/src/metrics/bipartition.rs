use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tensor::{Register, Role};

/// A split of a register into two nonempty complementary label sets. Both
/// sides keep register order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bipartition {
    side_a: Vec<String>,
    side_b: Vec<String>,
}

impl Bipartition {
    pub fn new<S: AsRef<str>>(register: &Register, side_a: &[S]) -> Result<Self> {
        let mask = register.mask(side_a)?;
        let count = mask.iter().filter(|&&m| m).count();
        if count == 0 || count == register.len() {
            return Err(Error::arg(format!(
                "bipartition side must be a proper nonempty subset of {register}"
            )));
        }
        Ok(Self::from_mask(register, &mask))
    }

    pub(crate) fn from_mask(register: &Register, mask: &[bool]) -> Self {
        let (mut a, mut b) = (Vec::new(), Vec::new());
        for (label, &m) in register.labels().zip(mask) {
            if m { a.push(label.to_owned()) } else { b.push(label.to_owned()) }
        }
        Self { side_a: a, side_b: b }
    }

    pub fn side_a(&self) -> &[String] {
        &self.side_a
    }

    pub fn side_b(&self) -> &[String] {
        &self.side_b
    }

    /// The same cut with the sides swapped.
    pub fn complement(&self) -> Self {
        Self { side_a: self.side_b.clone(), side_b: self.side_a.clone() }
    }

    /// Order-independent identifier: `A|B` and `B|A` share a key.
    pub fn canonical_key(&self) -> String {
        let join = |side: &[String]| {
            let mut s = side.to_vec();
            s.sort();
            s.join(",")
        };
        let (a, b) = (join(&self.side_a), join(&self.side_b));
        if a <= b { format!("{a}|{b}") } else { format!("{b}|{a}") }
    }

    /// `Q1|Q2Q3Q4K` style name.
    pub fn name(&self) -> String {
        format!("{}|{}", self.side_a.concat(), self.side_b.concat())
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Which cuts a report covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BipartitionFamily {
    /// Every split of the node qubits, carriers appended to the second side.
    NodeBipartitions,
    /// Every split of the whole register.
    All,
}

impl std::str::FromStr for BipartitionFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nodes" | "node_bipartitions" => Ok(Self::NodeBipartitions),
            "all" => Ok(Self::All),
            _ => Err(Error::arg(format!("unknown bipartition family {s:?}"))),
        }
    }
}

/// Subsets of `0..n` taken once per unordered split: smaller sides first, and
/// for even halves only those containing index 0. Ordered by size, then
/// lexicographically.
fn half_subsets(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for k in 1..=n / 2 {
        let mut combo: Vec<usize> = (0..k).collect();
        loop {
            if 2 * k < n || combo[0] == 0 {
                out.push(combo.clone());
            }
            // next combination in lexicographic order
            let Some(i) = (0..k).rev().find(|&i| combo[i] < n - k + i) else { break };
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
        }
    }
    out
}

impl BipartitionFamily {
    /// The cuts of `register` in this family: `2^(m−1) − 1` of them, where
    /// `m` counts node qubits (or all subsystems for [`All`](Self::All)).
    pub fn enumerate(self, register: &Register) -> Result<Vec<Bipartition>> {
        let members: Vec<usize> = match self {
            Self::NodeBipartitions => register
                .subsystems()
                .iter()
                .enumerate()
                .filter(|(_, s)| s.role == Role::Node)
                .map(|(i, _)| i)
                .collect(),
            Self::All => (0..register.len()).collect(),
        };
        if members.len() < 2 {
            return Err(Error::arg(format!(
                "{register} has fewer than two subsystems to split"
            )));
        }
        Ok(half_subsets(members.len())
            .into_iter()
            .map(|subset| {
                let mut mask = vec![false; register.len()];
                for s in subset {
                    mask[members[s]] = true;
                }
                Bipartition::from_mask(register, &mask)
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::Subsystem;

    fn ring4() -> Register {
        let mut subs: Vec<Subsystem> = (1..=4).map(|i| Subsystem::qubit(format!("Q{i}"), Role::Node)).collect();
        subs.push(Subsystem::qubit("K", Role::Carrier));
        Register::new(subs).unwrap()
    }

    #[test]
    fn node_family_of_four_nodes() {
        let names: Vec<String> = BipartitionFamily::NodeBipartitions
            .enumerate(&ring4())
            .unwrap()
            .iter()
            .map(Bipartition::name)
            .collect();
        assert_eq!(
            names,
            [
                "Q1|Q2Q3Q4K", "Q2|Q1Q3Q4K", "Q3|Q1Q2Q4K", "Q4|Q1Q2Q3K", "Q1Q2|Q3Q4K", "Q1Q3|Q2Q4K",
                "Q1Q4|Q2Q3K"
            ]
        );
    }

    #[test]
    fn family_sizes() {
        let r = ring4();
        assert_eq!(BipartitionFamily::All.enumerate(&r).unwrap().len(), 15);
        for n in 2..=9 {
            assert_eq!(half_subsets(n).len(), (1 << (n - 1)) - 1);
        }
    }

    #[test]
    fn canonical_key_ignores_orientation() {
        let b = Bipartition::new(&ring4(), &["Q1", "K"]).unwrap();
        assert_eq!(b.canonical_key(), b.complement().canonical_key());
        assert_eq!(b.side_b(), ["Q2", "Q3", "Q4"]);
        assert_ne!(b.canonical_key(), Bipartition::new(&ring4(), &["Q1"]).unwrap().canonical_key());
    }

    #[test]
    fn rejects_improper_sides() {
        let r = ring4();
        assert!(Bipartition::new::<&str>(&r, &[]).is_err());
        assert!(Bipartition::new(&r, &["Q1", "Q2", "Q3", "Q4", "K"]).is_err());
        assert!(Bipartition::new(&r, &["X"]).is_err());
    }
}
