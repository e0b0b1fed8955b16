use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum TopologyKind {
    Linear,
    Ring,
    Star { center: usize },
    Custom,
    #[serde(rename = "appendixA")]
    AppendixA,
}

/// Nodes `Q1..QN` and the unordered node pairs to entangle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Topology {
    node_count: usize,
    pairs: Vec<(usize, usize)>,
    kind: TopologyKind,
}

pub fn node_label(index: usize) -> String {
    format!("Q{index}")
}

impl Topology {
    /// Open chain `{Q_k, Q_{k+1}}`, `k = 1..N−1`.
    pub fn linear(n: usize) -> Result<Self> {
        require_nodes(n, 2)?;
        let pairs = (1..n).map(|k| (k, k + 1)).collect();
        Ok(Self { node_count: n, pairs, kind: TopologyKind::Linear })
    }

    /// Cycle `{Q_k, Q_{k+1}}` with `Q_{N+1} = Q_1`. For `N = 2` the two
    /// coinciding pairs collapse to one.
    pub fn ring(n: usize) -> Result<Self> {
        Ok(Self { node_count: n, pairs: ring_pairs(n)?, kind: TopologyKind::Ring })
    }

    /// `{Q_center, Q_j}` for every other node, leaves in index order.
    pub fn star(n: usize, center: usize) -> Result<Self> {
        require_nodes(n, 2)?;
        if center == 0 || center > n {
            return Err(Error::arg(format!("star center Q{center} outside Q1..Q{n}")));
        }
        let pairs = (1..=n).filter(|&j| j != center).map(|j| (center, j)).collect();
        Ok(Self { node_count: n, pairs, kind: TopologyKind::Star { center } })
    }

    pub fn custom(n: usize, pairs: Vec<(usize, usize)>) -> Result<Self> {
        require_nodes(n, 2)?;
        if pairs.is_empty() {
            return Err(Error::arg("topology needs at least one node pair"));
        }
        let mut seen = HashSet::new();
        for &(i, j) in &pairs {
            if i == 0 || j == 0 || i > n || j > n {
                return Err(Error::arg(format!("pair ({i},{j}) references a node outside Q1..Q{n}")));
            }
            if i == j {
                return Err(Error::arg(format!("pair ({i},{j}) repeats a node")));
            }
            if !seen.insert((i.min(j), i.max(j))) {
                return Err(Error::arg(format!("duplicate pair ({i},{j})")));
            }
        }
        Ok(Self { node_count: n, pairs, kind: TopologyKind::Custom })
    }

    /// Ring with the two perfect matchings mixed in; `n` even and at least 4.
    pub fn appendix_a(n: usize) -> Result<Self> {
        if n < 4 || !n.is_multiple_of(2) {
            return Err(Error::arg(format!(
                "simultaneous-pairs construction needs an even node count ≥ 4, got {n}"
            )));
        }
        Ok(Self { node_count: n, pairs: ring_pairs(n)?, kind: TopologyKind::AppendixA })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    /// 1-based node pairs in protocol order.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn kind(&self) -> TopologyKind {
        self.kind
    }

    pub fn node_labels(&self) -> Vec<String> {
        (1..=self.node_count).map(node_label).collect()
    }

    /// The two perfect matchings `(Q1,Q2),(Q3,Q4),…` and `(QN,Q1),(Q2,Q3),…`.
    pub fn matchings(&self) -> Option<[Vec<(usize, usize)>; 2]> {
        if self.kind != TopologyKind::AppendixA {
            return None;
        }
        let n = self.node_count;
        let odd_even = (1..=n / 2).map(|k| (2 * k - 1, 2 * k)).collect();
        let even_odd = (0..n / 2)
            .map(|j| if j == 0 { (n, 1) } else { (2 * j, 2 * j + 1) })
            .collect();
        Some([odd_even, even_odd])
    }
}

fn require_nodes(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::arg(format!("need at least {min} nodes, got {n}")));
    }
    Ok(())
}

fn ring_pairs(n: usize) -> Result<Vec<(usize, usize)>> {
    require_nodes(n, 2)?;
    if n == 2 {
        return Ok(vec![(1, 2)]);
    }
    Ok((1..=n).map(|k| (k, k % n + 1)).collect())
}
