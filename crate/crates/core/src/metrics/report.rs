use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::metrics::bipartition::{Bipartition, BipartitionFamily};
use crate::metrics::negativity::negative_eigenvalues;
use crate::tensor::{DensityMatrix, Role};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BipartitionEntry {
    pub name: String,
    pub bipartition: Bipartition,
    /// Ascending.
    pub negative_eigenvalues: Vec<f64>,
    /// `−Σ negative_eigenvalues`.
    pub negativity: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BipartitionReport {
    pub family: BipartitionFamily,
    pub entries: Vec<BipartitionEntry>,
    /// Names of the entries the aggregates run over (all of them).
    pub bipartition_family: Vec<String>,
    /// `exp(mean ln negativity)`; zero when any entry has zero negativity.
    pub geometric_average: f64,
    /// Sum of the negativities of the single-node cuts `Q_j|rest`.
    pub total: f64,
    /// Sum of the negativities of every entry.
    pub family_sum: f64,
}

impl BipartitionReport {
    pub fn get(&self, name: &str) -> Option<&BipartitionEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    /// Entry whose first side is exactly `side_a`.
    pub fn find<S: AsRef<str>>(&self, side_a: &[S]) -> Option<&BipartitionEntry> {
        self.entries.iter().find(|e| {
            e.bipartition.side_a().len() == side_a.len()
                && side_a.iter().all(|s| e.bipartition.side_a().iter().any(|l| l == s.as_ref()))
        })
    }
}

/// Geometric mean of `values`; zero if any is not positive, `NaN` when empty.
pub fn geometric_mean(values: &[f64]) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    if values.iter().any(|&v| v <= 0.0) {
        return 0.0;
    }
    (values.iter().map(|v| v.ln()).sum::<f64>() / values.len() as f64).exp()
}

/// Aggregates `(geometric_average, total, family_sum)` recomputed from entries.
pub fn aggregates(entries: &[BipartitionEntry], rho: &DensityMatrix) -> (f64, f64, f64) {
    let negativities: Vec<f64> = entries.iter().map(|e| e.negativity).collect();
    let single_node = |e: &&BipartitionEntry| {
        let a = e.bipartition.side_a();
        a.len() == 1
            && rho
                .register()
                .get(&a[0])
                .is_ok_and(|s| s.role == Role::Node)
    };
    let total = entries.iter().filter(single_node).map(|e| e.negativity).sum();
    (geometric_mean(&negativities), total, negativities.iter().sum())
}

/// Negative partial-transpose spectra for every cut of `family`, computed in
/// parallel, with aggregate statistics.
pub fn bipartition_report(rho: &DensityMatrix, family: BipartitionFamily) -> Result<BipartitionReport> {
    rho.require_normalized()?;
    let cuts = family.enumerate(rho.register())?;
    let entries = cuts
        .into_par_iter()
        .map(|cut| {
            let negative_eigenvalues = negative_eigenvalues(rho, &cut)?;
            let negativity = -negative_eigenvalues.iter().sum::<f64>();
            Ok(BipartitionEntry { name: cut.name(), bipartition: cut, negative_eigenvalues, negativity })
        })
        .collect::<Result<Vec<_>>>()?;
    let (geometric_average, total, family_sum) = aggregates(&entries, rho);
    Ok(BipartitionReport {
        family,
        bipartition_family: entries.iter().map(|e| e.name.clone()).collect(),
        entries,
        geometric_average,
        total,
        family_sum,
    })
}
