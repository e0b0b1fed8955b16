use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tensor::operator::strides;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Node,
    Carrier,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subsystem {
    pub label: String,
    pub dim: usize,
    pub role: Role,
}

impl Subsystem {
    pub fn qubit(label: impl Into<String>, role: Role) -> Self {
        Self {
            label: label.into(),
            dim: 2,
            role,
        }
    }
}

/// Ordered subsystem labels fixing the tensor layout. The first label is the
/// most significant index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Register {
    subsystems: Vec<Subsystem>,
}

impl Register {
    pub fn new(subsystems: Vec<Subsystem>) -> Result<Self> {
        let mut seen = HashSet::new();
        for s in &subsystems {
            if s.dim < 2 {
                return Err(Error::arg(format!("subsystem {} has dimension {}", s.label, s.dim)));
            }
            if !seen.insert(s.label.as_str()) {
                return Err(Error::arg(format!("duplicate subsystem label {}", s.label)));
            }
        }
        Ok(Self { subsystems })
    }

    /// Register of qubits sharing one role.
    pub fn qubits<S: AsRef<str>>(labels: &[S], role: Role) -> Result<Self> {
        Self::new(
            labels
                .iter()
                .map(|l| Subsystem::qubit(l.as_ref(), role))
                .collect(),
        )
    }

    pub fn empty() -> Self {
        Self { subsystems: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.subsystems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsystems.is_empty()
    }

    pub fn subsystems(&self) -> &[Subsystem] {
        &self.subsystems
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.subsystems.iter().map(|s| s.label.as_str())
    }

    pub fn labels_with_role(&self, role: Role) -> Vec<String> {
        self.subsystems
            .iter()
            .filter(|s| s.role == role)
            .map(|s| s.label.clone())
            .collect()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.subsystems.iter().map(|s| s.dim).collect()
    }

    /// Total Hilbert-space dimension.
    pub fn dim(&self) -> usize {
        self.subsystems.iter().map(|s| s.dim).product()
    }

    pub fn contains(&self, label: &str) -> bool {
        self.position(label).is_ok()
    }

    pub fn position(&self, label: &str) -> Result<usize> {
        self.subsystems
            .iter()
            .position(|s| s.label == label)
            .ok_or_else(|| Error::arg(format!("unknown subsystem label {label}")))
    }

    pub fn get(&self, label: &str) -> Result<&Subsystem> {
        Ok(&self.subsystems[self.position(label)?])
    }

    /// Resolves labels to a position mask, rejecting unknown and repeated labels.
    pub fn mask<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<bool>> {
        let mut mask = vec![false; self.len()];
        for l in labels {
            let p = self.position(l.as_ref())?;
            if std::mem::replace(&mut mask[p], true) {
                return Err(Error::arg(format!("label {} listed twice", l.as_ref())));
            }
        }
        Ok(mask)
    }

    pub fn strides(&self) -> Vec<usize> {
        strides(&self.dims())
    }

    /// Concatenation with `other` placed in the less significant positions.
    pub fn concat(&self, other: &Register) -> Result<Register> {
        let mut subs = self.subsystems.clone();
        subs.extend(other.subsystems.iter().cloned());
        Register::new(subs)
    }

    /// Sub-register of the masked positions, in register order.
    pub fn select(&self, mask: &[bool]) -> Register {
        Register {
            subsystems: self
                .subsystems
                .iter()
                .zip(mask)
                .filter(|(_, &m)| m)
                .map(|(s, _)| s.clone())
                .collect(),
        }
    }
}

impl fmt::Display for Register {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<&str> = self.labels().collect();
        write!(f, "[{}]", labels.join(","))
    }
}

/// For every basis index, the contribution of the masked subsystems and of the
/// remaining ones to the flat index. `index = masked + rest`.
pub(crate) fn split_contributions(dims: &[usize], mask: &[bool]) -> Vec<(usize, usize)> {
    let st = strides(dims);
    let total: usize = dims.iter().product();
    let mut out = Vec::with_capacity(total);
    let mut digits = vec![0usize; dims.len()];
    for _ in 0..total {
        let mut masked = 0;
        let mut rest = 0;
        for k in 0..dims.len() {
            if mask[k] {
                masked += digits[k] * st[k];
            } else {
                rest += digits[k] * st[k];
            }
        }
        out.push((masked, rest));
        for k in (0..dims.len()).rev() {
            digits[k] += 1;
            if digits[k] < dims[k] {
                break;
            }
            digits[k] = 0;
        }
    }
    out
}

/// For every basis index, its index within the masked sub-register and within
/// the complementary sub-register.
pub(crate) fn split_indices(dims: &[usize], mask: &[bool]) -> Vec<(usize, usize)> {
    let total: usize = dims.iter().product();
    let mut out = Vec::with_capacity(total);
    let mut digits = vec![0usize; dims.len()];
    for _ in 0..total {
        let mut inside = 0;
        let mut outside = 0;
        for k in 0..dims.len() {
            if mask[k] {
                inside = inside * dims[k] + digits[k];
            } else {
                outside = outside * dims[k] + digits[k];
            }
        }
        out.push((inside, outside));
        for k in (0..dims.len()).rev() {
            digits[k] += 1;
            if digits[k] < dims[k] {
                break;
            }
            digits[k] = 0;
        }
    }
    out
}
